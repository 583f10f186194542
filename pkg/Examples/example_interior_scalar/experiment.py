#!/usr/bin/env python3

# interior density of the spectral Einstein functional for Psi = f,
# verified with random matrix bindings

from ResidueForge import *

interior = InteriorDensity(PsiSpec.fromName("f")).assembleInterior("einstein")
print(interior)

result = Result("interior/example")
result.setInterior(interior)
result.setDensity(DensityExpression(interior.density()))
result.addLedger(interior.ledger())
result.addOracleReports(interiorReports(interior, seed=3, bindingsCount=100))

print("oracle passed:", result.oraclePassed)

result.writeJson()
result.writeTiming()
result.writeLatex()
result.save()

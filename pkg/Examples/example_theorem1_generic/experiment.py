#!/usr/bin/env python3

# boundary density of the first theorem for a generic perturbation c(Psi),
# compared against the printed values

from ResidueForge import *

# the engine holds the symbol expansions of D_Psi^-2 and its composites.
# the delta convention decides how delta^k is read in sigma_-3(D_Psi^-2)
engine = BoundaryEngine(PsiSpec(PsiSpec.Kind.generic), DeltaConvention.PRINTED)

# a serial evaluator, or a process pool if RESIDUE_FORGE_WORKERS is set
evaluator = CaseEvaluator.ConstructEvaluator()

# store the case densities and logging in theorem1/example.pkl
result = Result("theorem1/example")

boundary = engine.boundaryDensity(1, evaluator, result)
result.setDensity(boundary.total)
result.addLedger(boundary.ledger)
result.addLedger(engine.lemmaLedger())

print(boundary)
for entry in result.ledger:
    print(entry)

# the generic density carries placeholders for the traces, so only the
# symbol-free cases can be checked numerically
oracle = CaseOracle(engine, seed=1, bindingsCount=5)
result.addOracleReports(oracle.checkTheorem(1, {case.label: density for case, density in boundary.cases}))

result.writeJson()
result.writeTiming()
result.writeLatex()
result.save()

#!/usr/bin/env python3

# boundary density of the second theorem for Psi = c(X)c(Y), using the
# spin reading of delta^k and a process pool for the cases

from ResidueForge import *

psi = PsiSpec.fromName("bivector")
engine = BoundaryEngine(psi, DeltaConvention.SPIN)
evaluator = ParallelCaseEvaluator(workers=4)

result = Result("theorem2/example")

boundary = engine.boundaryDensity(2, evaluator, result)
result.setDensity(boundary.total)
result.addLedger(boundary.ledger)
print(evaluator.getStatistics())

# the trace of c(dx_n)c(Psi) vanishes for a bivector, so the Tn-terms drop out
print("Tn =", psiTraceBindings(psi)["Tn"])
print(boundary.total.toLatex())

oracle = CaseOracle(engine, seed=2, bindingsCount=10)
result.addOracleReports(oracle.checkTheorem(2, {case.label: density for case, density in boundary.cases}))
print(result)

result.writeJson()
result.writeTiming()
result.save()

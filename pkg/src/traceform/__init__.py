"""Exact-arithmetic engine for Virasoro minimal model trace functions.

The package derives the modular differential equations satisfied by
intertwining-operator traces, solves them with the Frobenius method in exact
rational arithmetic, and verifies the resulting rational-weight eta-power
identities coefficient by coefficient. Supporting layers: exact q-series with
rational exponents (qseries), twisted elliptic series and Weierstrass
expansions (elliptic), highest-weight Virasoro modules (virasoro), the
coefficient tables of the square-bracket change of variables (bracket), Zhu
algebra computations (zhu), the modular ODE pipeline (mde), and a reporting
CLI (cli).
"""

__version__ = "0.1.0"

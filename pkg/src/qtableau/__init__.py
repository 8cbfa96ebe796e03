"""Q-tableaux for the implicational propositional calculus.

Decide tautologies, build closed Q-tableaux, prune them into U_Q
derivations and elaborate those into Hilbert-style proofs that a small
kernel checks.
"""
from .kernel import Proof, check, dump_proof, load_proof, match_axiom
from .semantics import Countermodel, Tautology, enumerate_formulas, evaluate, tautology
from .syntax import Formula, Imp, ParseError, Var, disj, neg_conj, parse, q_wrap, render
from .uq import NotTautology, prove_tautology

__version__ = "0.1.0"

"""Exact q-deformed mechanics on the quantum plane ``p x = q x p``."""

from .coeff import I, ONE, ZERO, ScalarExpr, arith, const, eval_numeric, q, qint, qint1, qpow, s, sym
from .qalgebra import FreeWord, QPoly, mul, normal_order, shadow
from .qcalculus import (
    QOneForm,
    QTwoForm,
    QVector,
    Side,
    contract,
    convert_form,
    differential,
    hamiltonian_field,
    partial_left,
    partial_right,
    qpb_contract,
    qpb_direct,
    symplectic_form,
)

__version__ = "0.1.0"

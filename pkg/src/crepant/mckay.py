"""The cyclic change-of-variables ansatz over general cyclotomic fields.

For the cyclic group of order n acting on the plane with opposite
characters, the McKay correspondence pairs nontrivial irreducible
characters R_1..R_{n-1} with nontrivial conjugacy classes, and suggests
the substitution matrix with entries

    (1/n) * (chi_rho(g) - 2)^(1/2) * chi_R(g),

rho being the two-dimensional standard representation.  Everything lives
in Q(zeta_2n): with zeta = zeta_2n one has chi_rho(gamma^k) =
zeta^(2k) + zeta^(-2k), and the square root is realized on the fixed
branch

    (chi_rho(gamma^k) - 2)^(1/2) := zeta^k - zeta^(-k),

which squares to the right thing identically and reproduces the n = 3
jacobian exactly (``check_n3_specialization`` is the guard for that
choice).  The quantum parameters are zeta_n^(n_R) with n_R = 1 for every
nontrivial R, all marks of the A_{n-1} diagram being 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Cyc3, CycElement, CycField
from .potentials import ChangeOfVars


@dataclass(frozen=True)
class DuValTransform:
    """The substitution matrix for the cyclic group of order n.

    ``matrix[j-1][k-1]`` is the coefficient of the class variable of
    gamma^k in the resolution variable of R_j, an element of Q(zeta_2n).
    """
    n: int
    field: CycField
    matrix: tuple[tuple[CycElement, ...], ...]
    q_values: tuple[CycElement, ...]


def character_rho(field: CycField, n: int, k: int) -> CycElement:
    """chi of the standard two-dimensional representation at gamma^k."""
    return field.zeta_pow(2 * k) + field.zeta_pow(-2 * k)


def character_irrep(field: CycField, n: int, j: int, k: int) -> CycElement:
    """chi of the one-dimensional character R_j at gamma^k."""
    return field.zeta_pow(2 * j * k)


def sqrt_rho_branch(field: CycField, k: int) -> CycElement:
    """The chosen square root of chi_rho(gamma^k) - 2, namely zeta^k - zeta^(-k)."""
    return field.zeta_pow(k) - field.zeta_pow(-k)


def duval_transform(n: int) -> DuValTransform:
    """Build the substitution matrix and quantum parameters for order n >= 2."""
    if n < 2:
        raise ValueError("n must be >= 2")
    field = CycField(2 * n)
    inv_n = Fraction(1, n)
    matrix = tuple(
        tuple(sqrt_rho_branch(field, k) * character_irrep(field, n, j, k) * inv_n
              for k in range(1, n))
        for j in range(1, n))
    q = field.zeta_pow(2)  # the primitive n-th root of unity
    return DuValTransform(n=n, field=field, matrix=matrix,
                          q_values=tuple(q for _ in range(1, n)))


def embed_cyc3(z: Cyc3, field: CycField) -> CycElement:
    """The canonical embedding of Q(w) into Q(zeta_m) for 3 | m, w -> zeta^(m/3)."""
    if field.m % 3 != 0:
        raise ValueError(f"Q(w) does not embed into Q(zeta_{field.m})")
    omega_image = field.zeta_pow(field.m // 3)
    return field.from_rational(z.a) + omega_image * field.from_rational(z.b)


def check_n3_specialization() -> bool:
    """True iff the n = 3 transform equals the explicit cyclotomic jacobian."""
    transform = duval_transform(3)
    cov = ChangeOfVars.standard()
    field = transform.field
    for j in range(2):
        for k in range(2):
            expected = embed_cyc3(cov.jacobian[j][k], field)
            if transform.matrix[j][k] != expected:
                return False
    q_expected = embed_cyc3(cov.q_values[0], field)
    return all(q == q_expected for q in transform.q_values)


def entry_square_identity(transform: DuValTransform) -> bool:
    """Branch-free consistency: each entry squares to (chi_rho - 2) chi_R^2 / n^2."""
    field, n = transform.field, transform.n
    inv_n2 = Fraction(1, n * n)
    for j in range(1, n):
        for k in range(1, n):
            entry = transform.matrix[j - 1][k - 1]
            target = ((character_rho(field, n, k) - 2)
                      * character_irrep(field, n, j, k) ** 2 * inv_n2)
            if entry * entry != target:
                return False
    return True


def galois_row_action(transform: DuValTransform, a: int) -> bool:
    """Check the Galois action zeta -> zeta^a against column permutation.

    For a odd and coprime to n (so that sigma_a is an automorphism of
    Q(zeta_2n)) the image of an entry equals the entry in column a*k mod n
    up to the explicit branch sign (-1)^floor(a*k/n); the squared entries
    match on the nose.
    """
    n, field = transform.n, transform.field
    if a % 2 == 0 or math.gcd(a, n) != 1:
        raise ValueError("need a odd and coprime to n")

    def sigma(elt: CycElement) -> CycElement:
        out = field.zero()
        for e, c in enumerate(elt.coeffs):
            out = out + field.zeta_pow(a * e) * c
        return out

    for j in range(1, n):
        for k in range(1, n):
            image = sigma(transform.matrix[j - 1][k - 1])
            kk = (a * k) % n
            target = transform.matrix[j - 1][kk - 1]
            sign = (-1) ** ((a * k) // n)
            if image != target * sign:
                return False
            if image * image != target * target:
                return False
    return True


def transform_json(transform: DuValTransform) -> dict:
    """Matrix and q-values as coefficient vectors over the power basis of zeta_2n."""
    return {
        "n": transform.n,
        "cyclotomic_order": 2 * transform.n,
        "matrix": [[entry.to_coeff_strings() for entry in row]
                   for row in transform.matrix],
        "q_values": [q.to_coeff_strings() for q in transform.q_values],
    }

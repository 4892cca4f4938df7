"""Shared builders: structure matrices, reference algebras, instances."""

from fractions import Fraction

import pytest

# (criterion number, line) pairs filled in by the acceptance suite and
# echoed after the run summary so every criterion prints one verdict line
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)

from hcforms.exact import GaussianRational as GQ, ONE, ZERO, gq
from hcforms.hypercomplex import (
    HypercomplexInstance,
    check_quaternion_triple,
)
from hcforms.liealg import LieAlgebra
from hcforms.linalg import mat_mul


def struct_matrix(images, n=8):
    """A complex-structure matrix from its pairing pattern.

    ``images`` maps a source basis index to (target index, sign), meaning
    L e_src = sign * e_tgt; the inverse pairing L e_tgt = -sign * e_src is
    filled in automatically so that L^2 = -Id on the paired lanes.
    """
    mat = [[gq(0)] * n for _ in range(n)]
    for src, (tgt, sign) in images.items():
        mat[tgt - 1][src - 1] = gq(sign)
        mat[src - 1][tgt - 1] = gq(-sign)
    return mat


# the diagonal-pairing structures used by the central-extension families
I_GT = struct_matrix({1: (2, 1), 3: (4, 1), 5: (6, 1), 7: (8, 1)})
J_GT = struct_matrix({1: (3, 1), 2: (4, -1), 5: (7, 1), 6: (8, -1)})
K_GT = mat_mul(I_GT, J_GT)

# the structures adapted to the rank-one solvable family
I_AA = struct_matrix({1: (8, 1), 2: (3, 1), 4: (5, 1), 6: (7, 1)})
J_AA = struct_matrix({1: (7, 1), 2: (4, 1), 3: (5, -1), 6: (8, -1)})
K_AA = mat_mul(I_AA, J_AA)

AA_COFRAME = [
    [gq(1), gq(0), gq(0), gq(0), gq(0), gq(0), gq(0), gq(0, 1)],
    [gq(0), gq(1), gq(0, 1), gq(0), gq(0), gq(0), gq(0), gq(0)],
    [gq(0), gq(0), gq(0), gq(1), gq(0, 1), gq(0), gq(0), gq(0)],
    [gq(0), gq(0), gq(0), gq(0), gq(0), gq(0, -1), gq(1), gq(0)],
]


def basis_coeffs(entries, n=8):
    """A coefficient vector from {basis index: value}."""
    vec = [GQ(0)] * n
    for k, c in entries.items():
        vec[k - 1] = GQ(c)
    return vec


def gt_algebra(t):
    """The one-parameter central-extension algebra, brackets by hand."""
    t = Fraction(t)
    return LieAlgebra(8, [
        (1, 2, basis_coeffs({6: -t})), (3, 4, basis_coeffs({6: 1 - t})),
        (1, 3, basis_coeffs({7: -t})), (2, 4, basis_coeffs({7: t - 1})),
        (1, 4, basis_coeffs({8: -t})), (2, 3, basis_coeffs({8: 1 - t})),
    ])


def gt_instance(t):
    g = gt_algebra(t)
    return HypercomplexInstance(g, check_quaternion_triple(g, I_GT, J_GT))


def abelian_instance():
    g = LieAlgebra(8, [])
    return HypercomplexInstance(g, check_quaternion_triple(g, I_GT, J_GT))


def aa_algebra(a11, a21, a13, a23, a, v2, v3, v4, v5):
    """The rank-one solvable algebra, bracket rows written by hand."""
    rows = {
        2: [(2, a11), (3, a21), (4, -a13), (5, a23)],
        3: [(2, -a21), (3, a11), (4, -a23), (5, -a13)],
        4: [(2, a13), (3, a23), (4, a11), (5, -a21)],
        5: [(2, -a23), (3, a13), (4, a21), (5, a11)],
        6: [(6, a), (2, -v4), (3, v5), (4, v2), (5, -v3)],
        7: [(7, a), (2, -v5), (3, -v4), (4, v3), (5, v2)],
        8: [(8, a), (2, v2), (3, v3), (4, v4), (5, v5)],
    }
    brackets = []
    for j, terms in rows.items():
        vec = [GQ(0)] * 8
        for tgt, c in terms:
            vec[tgt - 1] = GQ(c)
        if any(vec):
            brackets.append((1, j, vec))
    return LieAlgebra(8, brackets)


def aa_instance(*params):
    g = aa_algebra(*params)
    triple = check_quaternion_triple(g, I_AA, J_AA, K_AA)
    return HypercomplexInstance(g, triple, coframe=AA_COFRAME)


def identity_gram(n=8):
    return [[Fraction(1) if r == c else Fraction(0) for c in range(n)]
            for r in range(n)]


@pytest.fixture(scope="session")
def gt13():
    return gt_instance(Fraction(1, 3))


@pytest.fixture(scope="session")
def gt12():
    return gt_instance(Fraction(1, 2))


@pytest.fixture(scope="session")
def flat():
    return abelian_instance()

"""Standard-form LP data model, dictionaries, and basic solutions.

A program is min c.x subject to A x = b, x >= 0 with m constraint rows and
n variables.  Variable indices are 1-based throughout the public API, so a
basis is a set of m distinct indices drawn from {1..n}.  All scalars are
exact rationals (fractions.Fraction); no floats enter any computation.
"""

import json
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from . import kernels
from .errors import (
    DegenerateShape,
    DimensionMismatch,
    IndexOutOfRange,
    ParseError,
    RankDeficient,
    SingularBasis,
)


def parse_rational(value) -> Fraction:
    """Parse an int, Fraction, or "p/q" / "p" string into an exact rational."""
    if isinstance(value, bool):
        raise ParseError(f"not a rational scalar: {value!r}")
    if isinstance(value, Rational):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational literal {value!r}") from exc
    raise ParseError(f"not a rational scalar: {value!r}")


def format_rational(value: Fraction):
    """Render a rational for JSON: a plain int, or a lowest-terms "p/q" string."""
    if value.denominator == 1:
        return int(value)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class StandardFormLP:
    """Immutable standard-form program; rows and entries are stored as tuples."""

    m: int
    n: int
    A: tuple
    b: tuple
    c: tuple
    name: str = "lp"

    def __post_init__(self):
        A = tuple(tuple(parse_rational(x) for x in row) for row in self.A)
        b = tuple(parse_rational(x) for x in self.b)
        c = tuple(parse_rational(x) for x in self.c)
        if len(A) != self.m or len(b) != self.m:
            raise DimensionMismatch(
                f"A has {len(A)} rows and b has {len(b)} entries for m={self.m}")
        for row in A:
            if len(row) != self.n:
                raise DimensionMismatch(
                    f"A row of length {len(row)} does not match n={self.n}")
        if len(c) != self.n:
            raise DimensionMismatch(f"c has {len(c)} entries for n={self.n}")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    def column(self, j: int) -> tuple:
        """Column j of A, 1-based."""
        if not 1 <= j <= self.n:
            raise IndexOutOfRange(f"variable index {j} outside 1..{self.n}")
        return tuple(row[j - 1] for row in self.A)


@dataclass(frozen=True)
class Basis:
    """m distinct variable indices, kept sorted ascending."""

    indices: tuple

    def __post_init__(self):
        idx = tuple(sorted(int(i) for i in self.indices))
        if len(set(idx)) != len(idx):
            raise IndexOutOfRange(f"duplicate basis indices in {self.indices}")
        if idx and idx[0] < 1:
            raise IndexOutOfRange(f"basis indices must be >= 1, got {idx[0]}")
        object.__setattr__(self, "indices", idx)

    def replace(self, leaving: int, entering: int) -> "Basis":
        """New basis with one variable exchanged."""
        if leaving not in self.indices:
            raise IndexOutOfRange(f"{leaving} is not in basis {self.indices}")
        return Basis(tuple(entering if i == leaving else i for i in self.indices))

    def __iter__(self):
        return iter(self.indices)


@dataclass(frozen=True)
class Dictionary:
    """Dictionary of an LP at a basis.

    Rows follow the (ascending) basis order, columns the ascending nonbasis
    order: b_bar = A_B^{-1} b, A_bar = A_B^{-1} A_N, c_bar the reduced costs
    of the nonbasic variables, and z0 the objective value of the associated
    basic solution.
    """

    basis: Basis
    nonbasis: tuple
    b_bar: tuple
    c_bar: tuple
    A_bar: tuple
    z0: Fraction

    @property
    def num_rows(self) -> int:
        return len(self.b_bar)

    @property
    def num_cols(self) -> int:
        return len(self.c_bar)


@dataclass(frozen=True)
class BasicSolution:
    """Primal point determined by a basis: x_B = A_B^{-1} b, x_N = 0."""

    x: tuple
    basis: Basis
    objective: Fraction
    feasible: bool
    degenerate: bool


@dataclass(frozen=True)
class DualSolution:
    """Dual point determined by a basis: A_B^T y = c_B, s = c - A^T y."""

    y: tuple
    s: tuple


def validate(lp: StandardFormLP) -> StandardFormLP:
    """Check shape and rank; returns lp unchanged when well-posed."""
    if lp.n <= lp.m:
        raise DegenerateShape(f"need n > m, got m={lp.m}, n={lp.n}")
    rank = kernels.mat_rank([list(row) for row in lp.A])
    if rank < lp.m:
        raise RankDeficient(f"A has rank {rank} < m={lp.m}")
    return lp


def _check_basis(lp: StandardFormLP, basis: Basis) -> None:
    if len(basis.indices) != lp.m:
        raise DimensionMismatch(
            f"basis has {len(basis.indices)} indices for m={lp.m}")
    if basis.indices and basis.indices[-1] > lp.n:
        raise IndexOutOfRange(
            f"basis index {basis.indices[-1]} outside 1..{lp.n}")


def dictionary(lp: StandardFormLP, basis: Basis) -> Dictionary:
    """Build the dictionary of lp at basis; raises SingularBasis when A_B is."""
    _check_basis(lp, basis)
    basis0 = [j - 1 for j in basis.indices]
    arrays = kernels.dictionary_arrays(lp.A, lp.b, lp.c, basis0)
    if arrays is None:
        raise SingularBasis(f"basis {basis.indices} is singular")
    b_bar, c_bar, a_bar, z0 = arrays
    in_basis = set(basis.indices)
    nonbasis = tuple(j for j in range(1, lp.n + 1) if j not in in_basis)
    return Dictionary(
        basis=basis,
        nonbasis=nonbasis,
        b_bar=tuple(b_bar),
        c_bar=tuple(c_bar),
        A_bar=tuple(tuple(row) for row in a_bar),
        z0=z0,
    )


def basic_solution(lp: StandardFormLP, basis: Basis) -> BasicSolution:
    """Basic solution at basis, with feasibility and degeneracy flags."""
    _check_basis(lp, basis)
    basis0 = [j - 1 for j in basis.indices]
    values = kernels.basic_values(lp.A, lp.b, basis0)
    if values is None:
        raise SingularBasis(f"basis {basis.indices} is singular")
    x = [Fraction(0)] * lp.n
    for j, v in zip(basis.indices, values):
        x[j - 1] = v
    objective = sum((cj * xj for cj, xj in zip(lp.c, x)), Fraction(0))
    return BasicSolution(
        x=tuple(x),
        basis=basis,
        objective=objective,
        feasible=all(v >= 0 for v in values),
        degenerate=any(v == 0 for v in values),
    )


def dual_solution(lp: StandardFormLP, basis: Basis) -> DualSolution:
    """Dual point of a basis: y solves A_B^T y = c_B, s = c - A^T y."""
    _check_basis(lp, basis)
    basis0 = [j - 1 for j in basis.indices]
    at_rows = [[lp.A[i][j] for i in range(lp.m)] for j in basis0]
    rhs = [[lp.c[j]] for j in basis0]
    sol = kernels.solve_columns(at_rows, rhs)
    if sol is None:
        raise SingularBasis(f"basis {basis.indices} is singular")
    y = tuple(row[0] for row in sol)
    s = tuple(
        lp.c[j] - sum((lp.A[i][j] * y[i] for i in range(lp.m)), Fraction(0))
        for j in range(lp.n)
    )
    return DualSolution(y=y, s=s)


# --- instance serialization ---------------------------------------------

def lp_to_dict(lp: StandardFormLP, initial_basis: Basis = None, extra: dict = None) -> dict:
    """JSON-ready dict for an instance; optional initial basis and extras."""
    doc = {
        "name": lp.name,
        "m": lp.m,
        "n": lp.n,
        "A": [[format_rational(x) for x in row] for row in lp.A],
        "b": [format_rational(x) for x in lp.b],
        "c": [format_rational(x) for x in lp.c],
    }
    if initial_basis is not None:
        doc["initial_basis"] = list(initial_basis.indices)
    if extra:
        doc.update(extra)
    return doc


def lp_from_dict(doc: dict):
    """Parse an instance dict -> (lp, initial_basis or None, dmdp dict or None)."""
    try:
        lp = StandardFormLP(
            m=int(doc["m"]),
            n=int(doc["n"]),
            A=doc["A"],
            b=doc["b"],
            c=doc["c"],
            name=str(doc.get("name", "lp")),
        )
    except KeyError as exc:
        raise ParseError(f"instance is missing key {exc}") from exc
    except (TypeError, ValueError) as exc:
        raise ParseError(f"malformed instance: {exc}") from exc
    initial = doc.get("initial_basis")
    basis = Basis(tuple(int(i) for i in initial)) if initial is not None else None
    return lp, basis, doc.get("dmdp")


def save_lp(lp: StandardFormLP, path, initial_basis: Basis = None, extra: dict = None) -> None:
    with open(path, "w") as fh:
        json.dump(lp_to_dict(lp, initial_basis, extra), fh, indent=2)
        fh.write("\n")


def load_lp(path):
    """Load an instance file -> (lp, initial_basis or None, dmdp dict or None)."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: instance file must hold a JSON object")
    return lp_from_dict(doc)

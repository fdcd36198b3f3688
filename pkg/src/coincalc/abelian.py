"""Exact arithmetic for finitely generated abelian groups.

Every group is kept in invariant-factor form: a free rank plus a list of
torsion coefficients chained by divisibility (``t[i]`` divides
``t[i+1]``).  That form is unique, so isomorphism tests reduce to a
field comparison.  All computations run over Python integers, which do
not overflow, so the Smith normal form and everything built on it is
exact for any input size.

Conventions used throughout:

* elements are integer coordinate vectors against the group's
  generators, free generators first, torsion coordinates stored reduced
  into ``[0, t)``;
* homomorphism matrices have one row per codomain generator and one
  column per domain generator;
* a subgroup of ``Z^n / L`` (``L`` the relation lattice) is handled as
  the lattice spanned by its generators together with ``L``, so
  membership, canonical form and quotients all come down to one Smith
  normal form.

All values are immutable after construction and safe to share between
threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd, inf, lcm, prod

from .errors import UsageError

Matrix = tuple[tuple[int, ...], ...]

#: Guard for the element-enumeration oracles; keeps them in test territory.
ENUMERATION_CAP = 10**6


# ---------------------------------------------------------------------------
# integer matrices


def _identity(k: int) -> list[list[int]]:
    return [[int(i == j) for j in range(k)] for i in range(k)]


def _freeze(rows) -> Matrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


def _mat_mul(a, b) -> list[list[int]]:
    if a and b and len(a[0]) != len(b):
        raise UsageError("matrix shape mismatch in product")
    inner = len(b)
    width = len(b[0]) if b else 0
    return [
        [sum(row[k] * b[k][j] for k in range(inner)) for j in range(width)]
        for row in a
    ]


def _mat_vec(a, v) -> list[int]:
    if a and len(a[0]) != len(v):
        raise UsageError("matrix/vector shape mismatch")
    return [sum(row[k] * v[k] for k in range(len(v))) for row in a]


@dataclass(frozen=True)
class _Snf:
    """Full transform data for ``diag = u * a * v``."""

    u: Matrix
    uinv: Matrix
    v: Matrix
    vinv: Matrix
    diag: tuple[int, ...]
    rank: int
    nrows: int
    ncols: int

    def d_matrix(self) -> Matrix:
        rows = []
        for i in range(self.nrows):
            row = [0] * self.ncols
            if i < len(self.diag):
                row[i] = self.diag[i]
            rows.append(row)
        return _freeze(rows)


def _snf(rows: list[list[int]], ncols: int) -> _Snf:
    m = len(rows)
    n = ncols
    d = [list(r) for r in rows]
    u = _identity(m)
    uinv = _identity(m)
    v = _identity(n)
    vinv = _identity(n)

    def row_add(i, j, c):
        # row_i += c * row_j
        d[i] = [x + c * y for x, y in zip(d[i], d[j])]
        u[i] = [x + c * y for x, y in zip(u[i], u[j])]
        for r in uinv:
            r[j] -= c * r[i]

    def row_swap(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]
        for r in uinv:
            r[i], r[j] = r[j], r[i]

    def row_neg(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]
        for r in uinv:
            r[i] = -r[i]

    def col_add(j, i, c):
        # col_j += c * col_i
        for r in d:
            r[j] += c * r[i]
        for r in v:
            r[j] += c * r[i]
        vinv[i] = [x - c * y for x, y in zip(vinv[i], vinv[j])]

    def col_swap(i, j):
        for r in d:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]
        vinv[i], vinv[j] = vinv[j], vinv[i]

    t = 0
    while t < m and t < n:
        # smallest-absolute-value pivot keeps coefficient growth tame
        pivot = None
        best = None
        for i in range(t, m):
            for j in range(t, n):
                a = abs(d[i][j])
                if a and (best is None or a < best):
                    pivot, best = (i, j), a
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            row_swap(t, pi)
        if pj != t:
            col_swap(t, pj)
        if d[t][t] < 0:
            row_neg(t)
        p = d[t][t]
        for i in range(t + 1, m):
            if d[i][t]:
                row_add(i, t, -(d[i][t] // p))
        for j in range(t + 1, n):
            if d[t][j]:
                col_add(j, t, -(d[t][j] // p))
        if any(d[i][t] for i in range(t + 1, m)) or any(
            d[t][j] for j in range(t + 1, n)
        ):
            continue  # residues smaller than the pivot appeared; re-pivot
        offender = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if d[i][j] % p:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_add(t, offender, 1)  # drag a non-multiple into the pivot row
            continue
        t += 1

    diag = []
    for i in range(min(m, n)):
        if d[i][i] == 0:
            break
        diag.append(d[i][i])
    return _Snf(
        u=_freeze(u),
        uinv=_freeze(uinv),
        v=_freeze(v),
        vinv=_freeze(vinv),
        diag=tuple(diag),
        rank=len(diag),
        nrows=m,
        ncols=n,
    )


def smith_normal_form(a) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(u, d, v)`` with ``d = u @ a @ v``.

    ``u`` and ``v`` are unimodular, ``d`` is diagonal with nonnegative
    entries chained by divisibility and zero rows/columns trailing.
    Total on integer matrices of any shape, including empty ones.
    """
    rows = [list(map(int, r)) for r in a]
    ncols = len(rows[0]) if rows else 0
    if any(len(r) != ncols for r in rows):
        raise UsageError("ragged matrix")
    res = _snf(rows, ncols)
    return res.u, res.d_matrix(), res.v


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class FgAbGroup:
    """A finitely generated abelian group in invariant-factor form.

    ``labels`` name the generators (free generators first); they are
    presentation metadata and do not take part in equality.
    """

    free_rank: int
    torsion: tuple[int, ...] = ()
    labels: tuple[str, ...] | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(t) for t in self.torsion))
        if self.free_rank < 0:
            raise UsageError("free rank must be nonnegative")
        for t in self.torsion:
            if t < 2:
                raise UsageError(f"torsion coefficient {t} must be >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise UsageError(
                    f"torsion coefficients {list(self.torsion)} violate the "
                    "divisibility chain"
                )
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != self.ngens:
                raise UsageError("label count must equal generator count")

    # -- structure ---------------------------------------------------------

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def is_trivial(self) -> bool:
        return self.ngens == 0

    def order(self) -> int | float:
        return inf if self.free_rank else prod(self.torsion)

    def is_isomorphic_to(self, other: "FgAbGroup") -> bool:
        return (self.free_rank, self.torsion) == (other.free_rank, other.torsion)

    def relation_columns(self) -> list[list[int]]:
        """Columns spanning the relation lattice of ``Z^ngens``."""
        cols = []
        for j, t in enumerate(self.torsion):
            col = [0] * self.ngens
            col[self.free_rank + j] = t
            cols.append(col)
        return cols

    # -- constructors ------------------------------------------------------

    @classmethod
    def trivial(cls) -> "FgAbGroup":
        return cls(0, ())

    @classmethod
    def free(cls, rank: int, labels=None) -> "FgAbGroup":
        return cls(rank, (), labels)

    @classmethod
    def cyclic(cls, order: int, label: str | None = None) -> "FgAbGroup":
        labels = (label,) if label else None
        if order == 0:
            return cls(1, (), labels)
        if order == 1:
            return cls(0, ())
        return cls(0, (order,), labels)

    # -- elements ----------------------------------------------------------

    def reduce(self, coords) -> tuple[int, ...]:
        coords = [int(c) for c in coords]
        if len(coords) != self.ngens:
            raise UsageError(
                f"expected {self.ngens} coordinates, got {len(coords)}"
            )
        for j, t in enumerate(self.torsion):
            coords[self.free_rank + j] %= t
        return tuple(coords)

    def element(self, coords) -> "GroupElement":
        return GroupElement(self, tuple(coords))

    def zero(self) -> "GroupElement":
        return self.element((0,) * self.ngens)

    def generator(self, i: int) -> "GroupElement":
        if not 0 <= i < self.ngens:
            raise UsageError(f"no generator {i}")
        return self.element(tuple(int(j == i) for j in range(self.ngens)))

    def generators(self) -> list["GroupElement"]:
        return [self.generator(i) for i in range(self.ngens)]

    def enumerate_torsion_part(self, cap: int = ENUMERATION_CAP):
        """Yield every torsion element (free coordinates zero).

        Oracle helper; refuses groups with more than ``cap`` torsion
        elements.
        """
        if prod(self.torsion) > cap:
            raise UsageError(
                f"torsion part too large to enumerate (> {cap} elements)"
            )
        zeros = (0,) * self.free_rank
        for combo in itertools.product(*(range(t) for t in self.torsion)):
            yield self.element(zeros + combo)

    def enumerate_elements(self, cap: int = ENUMERATION_CAP):
        if self.free_rank:
            raise UsageError("cannot enumerate an infinite group")
        return self.enumerate_torsion_part(cap)

    # -- whole-group constructions ------------------------------------------

    def subgroup(self, generators) -> "Subgroup":
        return Subgroup(self, tuple(generators))

    def trivial_subgroup(self) -> "Subgroup":
        return Subgroup(self, ())

    def whole_subgroup(self) -> "Subgroup":
        return Subgroup(self, tuple(self.generators()))

    def quotient_by(self, sub: "Subgroup") -> tuple["FgAbGroup", "GroupHom"]:
        """Quotient by a subgroup together with the projection map.

        The projection is surjective and its kernel is exactly ``sub``.
        """
        if sub.ambient != self:
            raise UsageError("subgroup lives in a different ambient group")
        cols = [list(g.coords) for g in sub.generators] + self.relation_columns()
        group, to_canon, _ = _canonicalize_presentation(self.ngens, cols)
        return group, GroupHom(self, group, to_canon)

    def direct_sum(self, other: "FgAbGroup") -> "DirectSum":
        n1, n2 = self.ngens, other.ngens
        n = n1 + n2
        cols = []
        for c in self.relation_columns():
            cols.append(c + [0] * n2)
        for c in other.relation_columns():
            cols.append([0] * n1 + c)
        group, to_canon, from_canon = _canonicalize_presentation(n, cols)
        inj1 = GroupHom(self, group, [row[:n1] for row in to_canon])
        inj2 = GroupHom(other, group, [row[n1:] for row in to_canon])
        proj1 = GroupHom(group, self, from_canon[:n1])
        proj2 = GroupHom(group, other, from_canon[n1:])
        return DirectSum(group, (inj1, inj2), (proj1, proj2))

    def multiplication_by(self, k: int) -> "GroupHom":
        n = self.ngens
        return GroupHom(
            self, self, [[k * int(i == j) for j in range(n)] for i in range(n)]
        )

    def identity_hom(self) -> "GroupHom":
        return self.multiplication_by(1)

    # -- display -------------------------------------------------------------

    def describe(self) -> str:
        parts = ["Z"] * self.free_rank + [f"C{t}" for t in self.torsion]
        return " x ".join(parts) if parts else "0"

    def __str__(self):
        return self.describe()


@dataclass(frozen=True)
class DirectSum:
    group: FgAbGroup
    injections: tuple["GroupHom", "GroupHom"]
    projections: tuple["GroupHom", "GroupHom"]


def _canonicalize_presentation(ngens: int, relation_cols):
    """Canonical form of ``Z^ngens / <relation_cols>``.

    Returns ``(group, to_canonical, from_canonical)`` where the matrices
    convert coordinates between the presentation and the canonical
    generators (free generators first, torsion ascending).
    """
    rows = [[col[i] for col in relation_cols] for i in range(ngens)]
    res = _snf(rows, len(relation_cols))
    kept = [i for i in range(res.rank, ngens)]  # free coordinates
    torsion = []
    for i in range(res.rank):
        if res.diag[i] >= 2:
            kept.append(i)
            torsion.append(res.diag[i])
    group = FgAbGroup(ngens - res.rank, tuple(torsion))
    to_canon = [list(res.u[i]) for i in kept]
    from_canon = [[res.uinv[r][i] for i in kept] for r in range(ngens)]
    return group, to_canon, from_canon


# ---------------------------------------------------------------------------
# elements


@dataclass(frozen=True)
class GroupElement:
    group: FgAbGroup
    coords: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", self.group.reduce(self.coords))

    @property
    def is_zero(self) -> bool:
        return not any(self.coords)

    def order(self) -> int | float:
        """Order of the element; ``inf`` when a free coordinate is nonzero.

        Computed in closed form from the cyclic factors, so it is total.
        """
        if any(self.coords[: self.group.free_rank]):
            return inf
        result = 1
        for c, t in zip(self.coords[self.group.free_rank:], self.group.torsion):
            result = lcm(result, t // gcd(t, c))
        return result

    def _check_peer(self, other):
        if not isinstance(other, GroupElement) or other.group != self.group:
            raise UsageError("elements live in different groups")

    def __add__(self, other):
        self._check_peer(other)
        return GroupElement(
            self.group, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other):
        self._check_peer(other)
        return GroupElement(
            self.group, tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self):
        return GroupElement(self.group, tuple(-a for a in self.coords))

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return GroupElement(self.group, tuple(k * a for a in self.coords))

    __rmul__ = __mul__

    def __str__(self):
        if self.group.labels:
            terms = [
                f"{c}*{name}"
                for c, name in zip(self.coords, self.group.labels)
                if c
            ]
            return " + ".join(terms) if terms else "0"
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True)
class GroupHom:
    """Integer-matrix homomorphism; validated at construction.

    The matrix has one row per codomain generator, one column per domain
    generator.  Well-definedness (each torsion generator's order must be
    killed in the codomain) is checked eagerly so downstream code never
    sees an ill-defined map.  Torsion rows are stored reduced, which
    makes equality a plain matrix comparison.
    """

    domain: FgAbGroup
    codomain: FgAbGroup
    matrix: Matrix

    def __post_init__(self):
        mat = [list(map(int, row)) for row in self.matrix]
        if len(mat) != self.codomain.ngens or any(
            len(r) != self.domain.ngens for r in mat
        ):
            raise UsageError(
                f"matrix must be {self.codomain.ngens} x {self.domain.ngens}"
            )
        fr = self.codomain.free_rank
        for i, t in enumerate(self.codomain.torsion):
            row = mat[fr + i]
            mat[fr + i] = [x % t for x in row]
        object.__setattr__(self, "matrix", _freeze(mat))
        for j, t in enumerate(self.domain.torsion):
            col = j + self.domain.free_rank
            for i in range(self.codomain.ngens):
                v = t * self.matrix[i][col]
                if i < fr:
                    ok = v == 0
                else:
                    ok = v % self.codomain.torsion[i - fr] == 0
                if not ok:
                    raise UsageError(
                        "matrix does not define a homomorphism: generator of "
                        f"order {t} maps to an element whose order does not "
                        f"divide {t}"
                    )

    def __call__(self, elem: GroupElement) -> GroupElement:
        if elem.group != self.domain:
            raise UsageError("element is not in the domain")
        return GroupElement(
            self.codomain, tuple(_mat_vec(self.matrix, list(elem.coords)))
        )

    def __matmul__(self, other: "GroupHom") -> "GroupHom":
        if not isinstance(other, GroupHom):
            return NotImplemented
        if other.codomain != self.domain:
            raise UsageError("homomorphisms do not compose: shape mismatch")
        if self.domain.is_trivial:
            # empty matrices carry no width, so a composite through the
            # trivial group must be rebuilt at full shape
            return GroupHom.zero(other.domain, self.codomain)
        return GroupHom(
            other.domain, self.codomain, _mat_mul(self.matrix, other.matrix)
        )

    @property
    def is_zero(self) -> bool:
        return not any(any(row) for row in self.matrix)

    def kernel(self) -> "Subgroup":
        """Full preimage of zero, as a subgroup of the domain."""
        n = self.domain.ngens
        cols = [[row[j] for row in self.matrix] for j in range(n)]
        rel = self.codomain.relation_columns()
        stacked = cols + rel
        rows = [[c[i] for c in stacked] for i in range(self.codomain.ngens)]
        res = _snf(rows, len(stacked))
        gens = []
        for j in range(res.rank, len(stacked)):
            vec = [res.v[i][j] for i in range(n)]
            gens.append(self.domain.element(vec))
        return Subgroup(self.domain, tuple(gens))

    def image(self) -> "Subgroup":
        gens = [self(g) for g in self.domain.generators()]
        return Subgroup(self.codomain, tuple(gens))

    def is_surjective(self) -> bool:
        img = self.image()
        return all(img.contains(g) for g in self.codomain.generators())

    def is_bijective(self) -> bool:
        return self.is_surjective() and self.kernel().is_trivial

    def preimage_of(self, elem: GroupElement) -> GroupElement:
        """Some preimage of ``elem``; raises ``UsageError`` if none exists."""
        if elem.group != self.codomain:
            raise UsageError("element is not in the codomain")
        n = self.domain.ngens
        cols = [[row[j] for row in self.matrix] for j in range(n)]
        stacked = cols + self.codomain.relation_columns()
        rows = [[c[i] for c in stacked] for i in range(self.codomain.ngens)]
        res = _snf(rows, len(stacked))
        b = _mat_vec(res.u, list(elem.coords))
        w = [0] * len(stacked)
        for i, bi in enumerate(b):
            if i < res.rank:
                if bi % res.diag[i]:
                    raise UsageError("element has no preimage")
                w[i] = bi // res.diag[i]
            elif bi:
                raise UsageError("element has no preimage")
        z = _mat_vec(res.v, w)
        return self.domain.element(z[:n])

    def inverse(self) -> "GroupHom":
        """Inverse of an isomorphism; raises ``UsageError`` otherwise."""
        try:
            cols = [list(self.preimage_of(g).coords)
                    for g in self.codomain.generators()]
            inv = GroupHom(
                self.codomain,
                self.domain,
                [[c[i] for c in cols] for i in range(self.domain.ngens)],
            )
        except UsageError as exc:
            raise UsageError("homomorphism is not invertible") from exc
        if (self @ inv) != self.codomain.identity_hom() or (
            inv @ self
        ) != self.domain.identity_hom():
            raise UsageError("homomorphism is not invertible")
        return inv

    @classmethod
    def zero(cls, domain: FgAbGroup, codomain: FgAbGroup) -> "GroupHom":
        return cls(
            domain,
            codomain,
            [[0] * domain.ngens for _ in range(codomain.ngens)],
        )


def compose_homs(*homs: GroupHom) -> GroupHom:
    """Compose left-to-right: ``compose_homs(f, g)`` is ``g`` after ``f``."""
    if not homs:
        raise UsageError("nothing to compose")
    result = homs[0]
    for h in homs[1:]:
        result = h @ result
    return result


# ---------------------------------------------------------------------------
# subgroups


class Subgroup:
    """A finitely generated subgroup of an ambient group.

    The generating set together with the ambient relations spans a
    lattice; one Smith normal form of that span yields the membership
    test, the canonical (isomorphism-invariant) form, and canonical
    generators expressed back in ambient coordinates.
    """

    def __init__(self, ambient: FgAbGroup, generators=()):
        gens = []
        for g in generators:
            if not isinstance(g, GroupElement):
                g = ambient.element(g)
            if g.group != ambient:
                raise UsageError("generator lies outside the ambient group")
            gens.append(g)
        self._ambient = ambient
        self._generators = tuple(gens)
        n = ambient.ngens
        cols = [list(g.coords) for g in gens] + ambient.relation_columns()
        rows = [[c[i] for c in cols] for i in range(n)]
        self._span = _snf(rows, len(cols))
        self._canonical, self._canonical_gens = self._canonicalize(cols)

    def _canonicalize(self, cols):
        span = self._span
        n = self._ambient.ngens
        r = span.rank
        # lattice basis: columns of uinv scaled by the invariant factors
        basis = [
            [span.diag[i] * span.uinv[row][i] for i in range(r)]
            for row in range(n)
        ]
        # ambient relations expressed in that basis
        rel = self._ambient.relation_columns()
        m_cols = []
        for c in rel:
            y = _mat_vec(span.u, c)
            m_cols.append([y[i] // span.diag[i] for i in range(r)])
        m_rows = [[c[i] for c in m_cols] for i in range(r)]
        inner = _snf(m_rows, len(m_cols))
        order = list(range(inner.rank, r))
        torsion = []
        for i in range(inner.rank):
            if inner.diag[i] >= 2:
                order.append(i)
                torsion.append(inner.diag[i])
        group = FgAbGroup(r - inner.rank, tuple(torsion))
        gens = []
        for i in order:
            f = [inner.uinv[row][i] for row in range(r)]
            vec = _mat_vec(basis, f)
            gens.append(self._ambient.element(vec))
        return group, tuple(gens)

    # -- accessors -----------------------------------------------------------

    @property
    def ambient(self) -> FgAbGroup:
        return self._ambient

    @property
    def generators(self) -> tuple[GroupElement, ...]:
        return self._generators

    @property
    def canonical_form(self) -> FgAbGroup:
        return self._canonical

    @property
    def canonical_generators(self) -> tuple[GroupElement, ...]:
        """Generators realizing the canonical form inside the ambient group."""
        return self._canonical_gens

    @property
    def is_trivial(self) -> bool:
        return self._canonical.is_trivial

    def order(self) -> int | float:
        return self._canonical.order()

    # -- membership ----------------------------------------------------------

    def contains(self, elem: GroupElement) -> bool:
        if elem.group != self._ambient:
            raise UsageError("element lives in a different ambient group")
        y = _mat_vec(self._span.u, list(elem.coords))
        for i, yi in enumerate(y):
            if i < self._span.rank:
                if yi % self._span.diag[i]:
                    return False
            elif yi:
                return False
        return True

    def __contains__(self, elem) -> bool:
        return self.contains(elem)

    def coordinates_of(self, elem: GroupElement) -> tuple[int, ...] | None:
        """Coordinates of ``elem`` against the canonical generators, or
        ``None`` when the element is not a member."""
        if not self.contains(elem):
            return None
        cols = [list(g.coords) for g in self._canonical_gens]
        cols += self._ambient.relation_columns()
        rows = [[c[i] for c in cols] for i in range(self._ambient.ngens)]
        res = _snf(rows, len(cols))
        b = _mat_vec(res.u, list(elem.coords))
        w = [0] * len(cols)
        for i, bi in enumerate(b):
            if i < res.rank:
                w[i] = bi // res.diag[i]
            # beyond the rank everything is zero because elem is a member
        z = _mat_vec(res.v, w)
        return self._canonical.reduce(z[: self._canonical.ngens])

    def contains_subgroup(self, other: "Subgroup") -> bool:
        if other.ambient != self._ambient:
            raise UsageError("subgroups live in different ambient groups")
        return all(self.contains(g) for g in other.generators)

    def __eq__(self, other):
        if not isinstance(other, Subgroup):
            return NotImplemented
        return (
            self._ambient == other._ambient
            and self.contains_subgroup(other)
            and other.contains_subgroup(self)
        )

    def __hash__(self):
        return hash((self._ambient, self._canonical))

    # -- constructions --------------------------------------------------------

    def __add__(self, other: "Subgroup") -> "Subgroup":
        if not isinstance(other, Subgroup):
            return NotImplemented
        if other.ambient != self._ambient:
            raise UsageError("subgroups live in different ambient groups")
        return Subgroup(self._ambient, self._generators + other._generators)

    def intersection(self, other: "Subgroup") -> "Subgroup":
        if other.ambient != self._ambient:
            raise UsageError("subgroups live in different ambient groups")
        n = self._ambient.ngens
        rel = self._ambient.relation_columns()
        a1 = [list(g.coords) for g in self._generators] + rel
        a2 = [list(g.coords) for g in other._generators] + rel
        stacked = a1 + [[-x for x in c] for c in a2]
        rows = [[c[i] for c in stacked] for i in range(n)]
        res = _snf(rows, len(stacked))
        gens = []
        for j in range(res.rank, len(stacked)):
            x1 = [res.v[i][j] for i in range(len(a1))]
            vec = [
                sum(a1[k][row] * x1[k] for k in range(len(a1)))
                for row in range(n)
            ]
            gens.append(self._ambient.element(vec))
        return Subgroup(self._ambient, tuple(gens))

    def image_under(self, hom: GroupHom) -> "Subgroup":
        if hom.domain != self._ambient:
            raise UsageError("homomorphism domain differs from ambient group")
        return Subgroup(hom.codomain, tuple(hom(g) for g in self._generators))

    def enumerate_elements(self, cap: int = ENUMERATION_CAP):
        """Yield every element of a finite subgroup (oracle helper)."""
        if self._canonical.free_rank:
            raise UsageError("cannot enumerate an infinite subgroup")
        if prod(self._canonical.torsion) > cap:
            raise UsageError(
                f"subgroup too large to enumerate (> {cap} elements)"
            )
        zero = self._ambient.zero()
        for combo in itertools.product(
            *(range(t) for t in self._canonical.torsion)
        ):
            total = zero
            for c, g in zip(combo, self._canonical_gens):
                total = total + c * g
            yield total

    def __str__(self):
        return f"{self._canonical.describe()} in {self._ambient.describe()}"

    def __repr__(self):
        return f"Subgroup({self._canonical.describe()} in {self._ambient.describe()})"

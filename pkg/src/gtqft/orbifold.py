"""The invariant subalgebra of a graded Frobenius algebra.

Averaging over the conjugation action projects onto the invariants (valid
because the scalars have characteristic zero).  The invariant basis is the
reduced row echelon form of the projector image with least-index pivots,
so serialization and tests see a deterministic basis.

Vectors of the total space are flat tuples over all graded components,
concatenated in element-index order.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .algebra import GFrobeniusAlgebra, frobenius_untwisted
from .errors import NotClosed, SingularMatrix
from .exactlin import (
    ZERO,
    Matrix,
    Tensor3,
    Vector,
    rref,
    vector_literal,
)
from .groups import conjugacy
from .report import CheckEntry, CheckReport, Witness


def _offsets(a: GFrobeniusAlgebra) -> tuple[tuple[int, ...], int]:
    offsets = []
    total = 0
    for d in a.dims:
        offsets.append(total)
        total += d
    return tuple(offsets), total


def _component(a: GFrobeniusAlgebra, offsets, vec: Vector, g: int) -> Vector:
    start = offsets[g]
    return tuple(vec[start : start + a.dims[g]])


def total_action_matrix(a: GFrobeniusAlgebra, k: int) -> Matrix:
    """The conjugation automorphism of k on the whole graded space."""
    offsets, total = _offsets(a)
    grid = [[ZERO] * total for _ in range(total)]
    for g in a.group.elements():
        target = a.group.conj(k, g)
        block = a.action[(k, g)]
        for i in range(block.rows):
            row = grid[offsets[target] + i]
            for j in range(block.cols):
                row[offsets[g] + j] = block.data[i][j]
    return Matrix(total, total, grid)


def multiply_total(a: GFrobeniusAlgebra, offsets, x: Vector, y: Vector) -> Vector:
    """Product of two total-space vectors using the graded structure."""
    total = len(x)
    out = [ZERO] * total
    for g in a.group.elements():
        xg = _component(a, offsets, x, g)
        if not any(xg):
            continue
        for h in a.group.elements():
            yh = _component(a, offsets, y, h)
            if not any(yh):
                continue
            gh = a.group.mul(g, h)
            piece = a.apply_product(g, h, xg, yh)
            base = offsets[gh]
            for p, v in enumerate(piece):
                if v:
                    out[base + p] += v
    return tuple(out)


def _image_basis(m: Matrix) -> tuple[tuple[Vector, ...], tuple[int, ...]]:
    """Echelonized basis of the column space, with its pivot coordinates."""
    reduced, pivots = rref(m.transpose())
    basis = tuple(reduced.data[r] for r in range(len(pivots)))
    return basis, pivots


def _coordinates(
    basis: Sequence[Vector], pivots: Sequence[int], vec: Vector, what: str
) -> Vector:
    """Coordinates of `vec` in an echelonized basis; NotClosed if outside the span."""
    coords = tuple(vec[p] for p in pivots)
    residual = list(vec)
    for c, b in zip(coords, basis):
        if c:
            for idx, value in enumerate(b):
                if value:
                    residual[idx] -= c * value
    if any(residual):
        raise NotClosed(f"{what} leaves the invariant span: {vector_literal(vec)}")
    return coords


def invariant_projector(a: GFrobeniusAlgebra) -> Matrix:
    """The averaging projector over the whole conjugation action."""
    n = a.group.order
    _, total = _offsets(a)
    acc = Matrix.zeros(total, total)
    for k in a.group.elements():
        acc = acc + total_action_matrix(a, k)
    return acc.scale(Fraction(1, n))


def project_invariants(a: GFrobeniusAlgebra) -> tuple[Vector, ...]:
    """Deterministic basis of the fixed subspace of the conjugation action."""
    basis, _ = _image_basis(invariant_projector(a))
    return basis


class SectorDecomposition:
    """Per-class data: representatives, centralizer-invariant sector bases,
    and the mutually inverse change-of-basis matrices between the direct sum
    of those sectors and the invariant basis of the whole algebra.
    """

    __slots__ = ("representatives", "sector_bases", "expand", "restrict")

    def __init__(self, representatives, sector_bases, expand, restrict):
        self.representatives = representatives
        self.sector_bases = sector_bases
        self.expand = expand
        self.restrict = restrict


class OrbifoldAlgebra:
    """The invariant subalgebra, certified as an ordinary Frobenius algebra."""

    __slots__ = (
        "parent",
        "basis",
        "product",
        "unit",
        "trace",
        "class_data",
        "certification",
    )

    def __init__(self, parent, basis, product, unit, trace, class_data, certification):
        self.parent = parent
        self.basis = basis
        self.product = product
        self.unit = unit
        self.trace = trace
        self.class_data = class_data
        self.certification = certification

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def as_trivial_algebra(self) -> GFrobeniusAlgebra:
        """Repackage over the trivial group for the standard file format."""
        return frobenius_untwisted(self.dimension, self.product, self.unit, self.trace)


def _sector_decomposition(
    a: GFrobeniusAlgebra, inv_basis: Sequence[Vector], inv_pivots: Sequence[int]
) -> SectorDecomposition:
    group = a.group
    offsets, total = _offsets(a)
    classes = conjugacy(group)

    sector_bases: list[tuple[Vector, ...]] = []
    sector_pivots: list[tuple[int, ...]] = []
    for rep in classes.representatives:
        cent = classes.centralizers[rep]
        d = a.dims[rep]
        acc = Matrix.zeros(d, d)
        for k in cent:
            acc = acc + a.action[(k, rep)]
        projector = acc.scale(Fraction(1, len(cent)))
        basis, pivots = _image_basis(projector)
        sector_bases.append(basis)
        sector_pivots.append(pivots)

    # expansion: a centralizer-invariant sector vector spreads over its class
    expand_cols: list[Vector] = []
    for ci, rep in enumerate(classes.representatives):
        members = classes.classes[ci]
        movers = []
        for h in members:
            k = next(k for k in group.elements() if group.conj(k, rep) == h)
            movers.append((h, k))
        for w in sector_bases[ci]:
            full = [ZERO] * total
            for h, k in movers:
                moved = a.apply_action(k, rep, w)
                base = offsets[h]
                for i, v in enumerate(moved):
                    if v:
                        full[base + i] += v
            expand_cols.append(
                _coordinates(inv_basis, inv_pivots, tuple(full), "class expansion")
            )

    dim_inv = len(inv_basis)
    dim_sec = len(expand_cols)
    expand = Matrix(
        dim_inv, dim_sec, [[expand_cols[c][r] for c in range(dim_sec)] for r in range(dim_inv)]
    )

    # restriction: an invariant vector is determined by its representative parts
    restrict_cols: list[Vector] = []
    for v in inv_basis:
        coords: list[Fraction] = []
        for ci, rep in enumerate(classes.representatives):
            part = _component(a, offsets, v, rep)
            coords.extend(
                _coordinates(sector_bases[ci], sector_pivots[ci], part, "restriction")
            )
        restrict_cols.append(tuple(coords))
    restrict = Matrix(
        dim_sec, dim_inv, [[restrict_cols[c][r] for c in range(dim_inv)] for r in range(dim_sec)]
    )

    if restrict @ expand != Matrix.identity(dim_sec) or expand @ restrict != Matrix.identity(
        dim_inv
    ):
        raise NotClosed("sector change of basis failed to invert")
    return SectorDecomposition(
        classes.representatives, tuple(sector_bases), expand, restrict
    )


def sector_isomorphism(a: GFrobeniusAlgebra) -> tuple[Matrix, Matrix]:
    """Change-of-basis pair between centralizer-invariant sectors at class
    representatives and the invariant basis of the whole algebra.

    Returns (expand, restrict); both composites are identity matrices.
    """
    reduced, pivots = _image_basis(invariant_projector(a))
    deco = _sector_decomposition(a, reduced, pivots)
    return deco.expand, deco.restrict


def orbifold_algebra(a: GFrobeniusAlgebra) -> OrbifoldAlgebra:
    """Restrict the algebra to its invariants and certify the result.

    The certification report covers closure of the product, commutativity,
    associativity, unit membership and the unit law, and nondegeneracy of
    the restricted trace pairing.
    """
    group = a.group
    offsets, total = _offsets(a)
    basis, pivots = _image_basis(invariant_projector(a))
    d = len(basis)
    entries: list[CheckEntry] = []

    products: dict[tuple[int, int], Vector] = {}
    closure_witness = None
    for i, vi in enumerate(basis):
        for j, vj in enumerate(basis):
            w = multiply_total(a, offsets, vi, vj)
            try:
                products[(i, j)] = _coordinates(basis, pivots, w, "product")
            except NotClosed:
                closure_witness = Witness(
                    (("i", str(i)), ("j", str(j))),
                    vector_literal(w),
                    "a vector inside the invariant span",
                )
                products[(i, j)] = (ZERO,) * d
    entries.append(CheckEntry("orbifold-closure", closure_witness is None, closure_witness))

    commut_witness = None
    for i in range(d):
        for j in range(i + 1, d):
            if products[(i, j)] != products[(j, i)]:
                commut_witness = Witness(
                    (("i", str(i)), ("j", str(j))),
                    vector_literal(products[(i, j)]),
                    vector_literal(products[(j, i)]),
                )
                break
        if commut_witness:
            break
    entries.append(CheckEntry("orbifold-commutativity", commut_witness is None, commut_witness))

    assoc_witness = None
    for i in range(d):
        for j in range(d):
            ij = products[(i, j)]
            for k in range(d):
                jk = products[(j, k)]
                lhs = [ZERO] * d
                for m, c in enumerate(ij):
                    if c:
                        for p, v in enumerate(products[(m, k)]):
                            if v:
                                lhs[p] += c * v
                rhs = [ZERO] * d
                for m, c in enumerate(jk):
                    if c:
                        for p, v in enumerate(products[(i, m)]):
                            if v:
                                rhs[p] += c * v
                if lhs != rhs:
                    assoc_witness = Witness(
                        (("i", str(i)), ("j", str(j)), ("k", str(k))),
                        vector_literal(tuple(lhs)),
                        vector_literal(tuple(rhs)),
                    )
                    break
            if assoc_witness:
                break
        if assoc_witness:
            break
    entries.append(CheckEntry("orbifold-associativity", assoc_witness is None, assoc_witness))

    # the unit is invariant, so it must lie in the span and act as identity
    unit_witness = None
    unit_total = [ZERO] * total
    e = group.identity
    for i, v in enumerate(a.unit):
        unit_total[offsets[e] + i] = v
    try:
        unit_coords = _coordinates(basis, pivots, tuple(unit_total), "unit")
    except NotClosed:
        unit_coords = (ZERO,) * d
        unit_witness = Witness(
            (("vector", "unit"),),
            vector_literal(tuple(unit_total)),
            "a vector inside the invariant span",
        )
    if unit_witness is None:
        for j, vj in enumerate(basis):
            acted = multiply_total(a, offsets, tuple(unit_total), vj)
            if acted != vj:
                unit_witness = Witness(
                    (("j", str(j)),), vector_literal(acted), vector_literal(vj)
                )
                break
    entries.append(CheckEntry("orbifold-unit", unit_witness is None, unit_witness))

    # restricted trace: evaluate on the identity component only
    trace_coords = tuple(
        a.trace_of(_component(a, offsets, v, e)) for v in basis
    )
    gram_rows = []
    for i in range(d):
        row = []
        for j in range(d):
            row.append(
                sum((c * trace_coords[m] for m, c in enumerate(products[(i, j)]) if c), ZERO)
            )
        gram_rows.append(row)
    gram = Matrix(d, d, gram_rows)
    trace_witness = None
    try:
        gram.inverse()
    except SingularMatrix:
        trace_witness = Witness(
            (("gram", "determinant"),), "0", "nonzero determinant"
        )
    entries.append(
        CheckEntry("orbifold-trace-nondegenerate", trace_witness is None, trace_witness)
    )

    product_tensor = Tensor3(
        d,
        d,
        d,
        [[[products[(i, j)][k] for k in range(d)] for j in range(d)] for i in range(d)],
    )
    class_data = _sector_decomposition(a, basis, pivots)
    return OrbifoldAlgebra(
        parent=a,
        basis=basis,
        product=product_tensor,
        unit=unit_coords,
        trace=trace_coords,
        class_data=class_data,
        certification=CheckReport(tuple(entries)),
    )

"""Graded Frobenius algebras over a finite group: data, laws, derived maps.

Storage conventions
-------------------
For a group G with elements indexed 0..n-1, an algebra holds:

* ``dims[g]``: dimension of the graded component attached to element g;
* ``product[(g, h)]``: a rank-3 tensor of shape
  ``(dims[g], dims[h], dims[g*h])``; entry (i, j, p) is the coefficient of
  basis vector p of the g*h component in the product of basis vector i
  (grade g) with basis vector j (grade h);
* ``action[(k, g)]``: the matrix of the conjugation automorphism attached
  to k, restricted to grade g and landing in grade k*g*k^-1, of shape
  ``(dims[k g k^-1], dims[g])``; column j is the image of basis vector j;
* ``unit``: coordinates of the unit inside the identity component;
* ``trace``: the trace functional on the identity component.

The grading is structural: a product coefficient outside the g*h component
is not representable, and out-of-range indices in input documents are
rejected as shape errors.

Dual bases pair on the left: the dual basis of grade g lives in grade g^-1
and satisfies trace(basis_i * dual_j) = delta_ij.  The derived coproduct
into grades (g, h) is computed by both equivalent one-sided formulas
(multiply by the dual basis of h on the right, or by the dual basis of g on
the left) and the two results are cross-asserted entrywise.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (
    CoproductMismatch,
    DegeneratePairing,
    SchemaError,
    ShapeError,
    SingularMatrix,
)
from .exactlin import (
    ONE,
    ZERO,
    Matrix,
    Tensor3,
    Vector,
    as_vector,
    basis_vector,
    format_scalar,
    matrix_literal,
    scalar_from_string,
    vector_add,
    vector_literal,
    zero_vector,
)
from .groups import FiniteGroup, builtin, builtin_from_string, load_group, save_group
from .report import CheckEntry, CheckReport, Witness


class GFrobeniusAlgebra:
    """Shape-validated graded algebra data; laws are checked separately."""

    __slots__ = ("group", "dims", "product", "action", "unit", "trace")

    def __init__(
        self,
        group: FiniteGroup,
        dims: Sequence[int],
        product: Mapping[tuple[int, int], Tensor3],
        action: Mapping[tuple[int, int], Matrix],
        unit: Sequence,
        trace: Sequence,
    ):
        n = group.order
        dims = tuple(int(d) for d in dims)
        if len(dims) != n:
            raise ShapeError(f"got {len(dims)} dimensions for {n} group elements")
        if any(d < 0 for d in dims):
            raise ShapeError("component dimensions must be non-negative")

        full_product: dict[tuple[int, int], Tensor3] = {}
        for g in range(n):
            for h in range(n):
                want = (dims[g], dims[h], dims[group.mul(g, h)])
                tensor = product.get((g, h))
                if tensor is None:
                    tensor = Tensor3.zeros(*want)
                elif tensor.dims != want:
                    raise ShapeError(
                        f"product tensor for ({group.name(g)}, {group.name(h)}) has shape "
                        f"{tensor.dims}, expected {want}"
                    )
                full_product[(g, h)] = tensor

        full_action: dict[tuple[int, int], Matrix] = {}
        for k in range(n):
            for g in range(n):
                target = group.conj(k, g)
                want_rows, want_cols = dims[target], dims[g]
                block = action.get((k, g))
                if block is None:
                    block = Matrix.zeros(want_rows, want_cols)
                elif block.rows != want_rows or block.cols != want_cols:
                    raise ShapeError(
                        f"action block for ({group.name(k)}, {group.name(g)}) has shape "
                        f"{block.rows}x{block.cols}, expected {want_rows}x{want_cols}"
                    )
                full_action[(k, g)] = block

        unit = as_vector(unit)
        trace = as_vector(trace)
        de = dims[group.identity]
        if len(unit) != de:
            raise ShapeError(f"unit vector has length {len(unit)}, expected {de}")
        if len(trace) != de:
            raise ShapeError(f"trace covector has length {len(trace)}, expected {de}")

        self.group = group
        self.dims = dims
        self.product = full_product
        self.action = full_action
        self.unit = unit
        self.trace = trace

    def dim(self, g: int) -> int:
        return self.dims[g]

    def apply_product(self, g: int, h: int, x: Vector, y: Vector) -> Vector:
        """Multiply a grade-g vector by a grade-h vector; lands in grade g*h."""
        t = self.product[(g, h)]
        out = [ZERO] * t.dim2
        for i, xi in enumerate(x):
            if not xi:
                continue
            plane = t.data[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                row = plane[j]
                for p, v in enumerate(row):
                    if v:
                        out[p] += c * v
        return tuple(out)

    def apply_action(self, k: int, g: int, x: Vector) -> Vector:
        """Apply the conjugation automorphism of k to a grade-g vector."""
        m = self.action[(k, g)]
        return m.apply(x)

    def trace_of(self, x: Vector) -> Fraction:
        """Evaluate the trace functional on an identity-component vector."""
        return sum((t * v for t, v in zip(self.trace, x) if v), ZERO)

    def __eq__(self, other) -> bool:
        if not isinstance(other, GFrobeniusAlgebra):
            return NotImplemented
        return (
            self.group == other.group
            and self.dims == other.dims
            and self.product == other.product
            and self.action == other.action
            and self.unit == other.unit
            and self.trace == other.trace
        )

    def __repr__(self) -> str:
        return f"GFrobeniusAlgebra(order={self.group.order}, dims={self.dims})"


def group_algebra(group: FiniteGroup) -> GFrobeniusAlgebra:
    """The group algebra with its canonical graded Frobenius structure.

    Every component is one-dimensional, delta_g * delta_h = delta_gh, the
    conjugation action permutes the deltas and the trace sends delta_e to 1.
    """
    n = group.order
    dims = (1,) * n
    one_cell = Tensor3(1, 1, 1, (((ONE,),),))
    one_block = Matrix.identity(1)
    product = {(g, h): one_cell for g in range(n) for h in range(n)}
    action = {(k, g): one_block for k in range(n) for g in range(n)}
    return GFrobeniusAlgebra(group, dims, product, action, (ONE,), (ONE,))


def frobenius_untwisted(dim: int, product, unit, trace) -> GFrobeniusAlgebra:
    """Wrap an ordinary algebra-with-trace as the trivial-group case.

    `product` is a rank-3 structure-constant tensor (or nested lists) of
    shape (dim, dim, dim).  Whether the data actually satisfies the algebra
    laws is established by `check_axioms`, not here.
    """
    group = builtin("cyclic", 1)
    tensor = product if isinstance(product, Tensor3) else Tensor3(dim, dim, dim, product)
    return GFrobeniusAlgebra(
        group,
        (dim,),
        {(0, 0): tensor},
        {(0, 0): Matrix.identity(dim)},
        unit,
        trace,
    )


def dual_numbers_algebra() -> GFrobeniusAlgebra:
    """The two-dimensional algebra k[x]/(x^2) with basis (1, x) and trace x -> 1."""
    product = Tensor3.from_entries(2, 2, 2, {(0, 0, 0): 1, (0, 1, 1): 1, (1, 0, 1): 1})
    return frobenius_untwisted(2, product, unit=(1, 0), trace=(0, 1))


# ---------------------------------------------------------------------------
# File format


def _scalar_from_json(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise SchemaError(f"{where}: boolean is not a scalar")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return scalar_from_string(value)
        except ValueError as exc:
            raise SchemaError(f"{where}: {exc}") from None
    raise SchemaError(f"{where}: scalar values must be strings like \"p/q\" or integers")


def _element_index(group: FiniteGroup, value, where: str) -> int:
    if not isinstance(value, str):
        raise SchemaError(f"{where}: element references must be name strings")
    if value not in group.names:
        raise SchemaError(f"{where}: unknown element name {value!r}")
    return group.index(value)


def _int_field(entry, key, where) -> int:
    value = entry.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise SchemaError(f"{where}: field {key!r} must be an integer index")
    return value


def load_algebra(doc) -> GFrobeniusAlgebra:
    """Build a shape-validated algebra from a parsed JSON document.

    Omitted product/action entries are zero.  The laws are *not* checked
    here; run `check_axioms` on the result.
    """
    if not isinstance(doc, dict):
        raise SchemaError("algebra document must be an object")

    group_field = doc.get("group")
    if isinstance(group_field, str):
        group = builtin_from_string(group_field)
    elif isinstance(group_field, dict):
        group = load_group(group_field)
    else:
        raise SchemaError('algebra "group" must be a builtin string or an inline group')

    n = group.order
    dims_field = doc.get("dims")
    if not isinstance(dims_field, dict):
        raise SchemaError('algebra "dims" must be an object mapping element names to sizes')
    dims = [0] * n
    for name, value in dims_field.items():
        g = _element_index(group, name, "dims")
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise SchemaError(f"dims[{name!r}] must be a non-negative integer")
        dims[g] = value

    product_entries: dict[tuple[int, int], dict[tuple[int, int, int], Fraction]] = {}
    raw_product = doc.get("product", [])
    if not isinstance(raw_product, list):
        raise SchemaError('algebra "product" must be a list of entries')
    for pos, entry in enumerate(raw_product):
        where = f"product[{pos}]"
        if not isinstance(entry, dict):
            raise SchemaError(f"{where}: entries must be objects")
        g = _element_index(group, entry.get("g"), where)
        h = _element_index(group, entry.get("h"), where)
        i = _int_field(entry, "i", where)
        j = _int_field(entry, "j", where)
        k = _int_field(entry, "k", where)
        value = _scalar_from_json(entry.get("value"), where)
        gh = group.mul(g, h)
        if not 0 <= i < dims[g] or not 0 <= j < dims[h]:
            raise ShapeError(
                f"{where}: basis index ({i}, {j}) outside components of dimension "
                f"({dims[g]}, {dims[h]})"
            )
        if not 0 <= k < dims[gh]:
            raise ShapeError(
                f"{where}: target index {k} lands outside the {group.name(gh)} component "
                f"of dimension {dims[gh]}"
            )
        cell = product_entries.setdefault((g, h), {})
        if (i, j, k) in cell:
            raise SchemaError(f"{where}: duplicate product coordinate")
        cell[(i, j, k)] = value

    action_entries: dict[tuple[int, int], dict[tuple[int, int], Fraction]] = {}
    raw_action = doc.get("action", [])
    if not isinstance(raw_action, list):
        raise SchemaError('algebra "action" must be a list of entries')
    for pos, entry in enumerate(raw_action):
        where = f"action[{pos}]"
        if not isinstance(entry, dict):
            raise SchemaError(f"{where}: entries must be objects")
        k = _element_index(group, entry.get("k"), where)
        g = _element_index(group, entry.get("g"), where)
        i = _int_field(entry, "i", where)
        j = _int_field(entry, "j", where)
        value = _scalar_from_json(entry.get("value"), where)
        target = group.conj(k, g)
        if not 0 <= i < dims[target]:
            raise ShapeError(
                f"{where}: row index {i} lands outside the {group.name(target)} component "
                f"of dimension {dims[target]}"
            )
        if not 0 <= j < dims[g]:
            raise ShapeError(
                f"{where}: column index {j} outside a component of dimension {dims[g]}"
            )
        cell = action_entries.setdefault((k, g), {})
        if (i, j) in cell:
            raise SchemaError(f"{where}: duplicate action coordinate")
        cell[(i, j)] = value

    de = dims[group.identity]
    raw_unit = doc.get("unit", [])
    raw_trace = doc.get("trace", [])
    if not isinstance(raw_unit, list) or len(raw_unit) != de:
        raise SchemaError(f'algebra "unit" must be a list of {de} scalars')
    if not isinstance(raw_trace, list) or len(raw_trace) != de:
        raise SchemaError(f'algebra "trace" must be a list of {de} scalars')
    unit = tuple(_scalar_from_json(v, f"unit[{i}]") for i, v in enumerate(raw_unit))
    trace = tuple(_scalar_from_json(v, f"trace[{i}]") for i, v in enumerate(raw_trace))

    product = {
        (g, h): Tensor3.from_entries(dims[g], dims[h], dims[group.mul(g, h)], cell)
        for (g, h), cell in product_entries.items()
    }
    action = {}
    for (k, g), cell in action_entries.items():
        target = group.conj(k, g)
        grid = [[ZERO] * dims[g] for _ in range(dims[target])]
        for (i, j), value in cell.items():
            grid[i][j] = value
        action[(k, g)] = Matrix(dims[target], dims[g], grid)

    return GFrobeniusAlgebra(group, dims, product, action, unit, trace)


def save_algebra(a: GFrobeniusAlgebra) -> dict:
    """Serialize an algebra to the JSON document format (inline group)."""
    group = a.group
    n = group.order
    product = []
    for g in range(n):
        for h in range(n):
            t = a.product[(g, h)]
            for i in range(t.dim0):
                for j in range(t.dim1):
                    for k in range(t.dim2):
                        value = t.data[i][j][k]
                        if value:
                            product.append(
                                {
                                    "g": group.name(g),
                                    "h": group.name(h),
                                    "i": i,
                                    "j": j,
                                    "k": k,
                                    "value": format_scalar(value),
                                }
                            )
    action = []
    for k in range(n):
        for g in range(n):
            m = a.action[(k, g)]
            for i in range(m.rows):
                for j in range(m.cols):
                    value = m.data[i][j]
                    if value:
                        action.append(
                            {
                                "k": group.name(k),
                                "g": group.name(g),
                                "i": i,
                                "j": j,
                                "value": format_scalar(value),
                            }
                        )
    return {
        "group": save_group(group),
        "dims": {group.name(g): a.dims[g] for g in range(n)},
        "product": product,
        "action": action,
        "unit": [format_scalar(v) for v in a.unit],
        "trace": [format_scalar(v) for v in a.trace],
    }


# ---------------------------------------------------------------------------
# Derived structure


class DerivedStructure:
    """Pairings, dual bases, coproducts and handle elements of an algebra.

    * ``pairings[g]``: the Gram matrix of trace(x*y) for x in grade g and
      y in grade g^-1; its matrix is also the component-wise isomorphism
      onto the linear dual of grade g^-1 induced by the trace.
    * ``dual_bases[g]``: columns express the dual basis of grade g in the
      stored basis of grade g^-1 (the inverse of ``pairings[g]``).
    * ``coproducts[(g, h)]``: tensor of shape
      (dims[g*h], dims[g], dims[h]); entry (c, i, j) is the coefficient of
      basis_i x basis_j in the coproduct of basis_c.
    * ``euler[g]``: the diagonal sum basis_i x dual_i of grade g paired
      with grade g^-1, stored as a dims[g] x dims[g^-1] matrix.
    """

    __slots__ = ("pairings", "dual_bases", "coproducts", "euler")

    def __init__(self, pairings, dual_bases, coproducts, euler):
        self.pairings = pairings
        self.dual_bases = dual_bases
        self.coproducts = coproducts
        self.euler = euler


def pairing_matrix(a: GFrobeniusAlgebra, g: int) -> Matrix:
    """Gram matrix of the trace pairing between grades g and g^-1."""
    gi = a.group.inv(g)
    rows = []
    for i in range(a.dims[g]):
        bi = basis_vector(a.dims[g], i)
        row = []
        for j in range(a.dims[gi]):
            bj = basis_vector(a.dims[gi], j)
            row.append(a.trace_of(a.apply_product(g, gi, bi, bj)))
        rows.append(tuple(row))
    return Matrix._wrap(a.dims[g], a.dims[gi], tuple(rows))


def derive(a: GFrobeniusAlgebra) -> DerivedStructure:
    """Dual bases, coproducts and handle elements from the trace pairing.

    Requires every pairing to be nondegenerate; raises DegeneratePairing
    otherwise.  The coproduct for each grade pair is computed by both
    one-sided formulas and cross-asserted, so downstream code may rely on
    either reading.
    """
    group = a.group
    n = group.order
    pairings: dict[int, Matrix] = {}
    dual_bases: dict[int, Matrix] = {}
    euler: dict[int, Matrix] = {}
    for g in range(n):
        gi = group.inv(g)
        theta = pairing_matrix(a, g)
        if theta.rows != theta.cols:
            raise DegeneratePairing(
                group.name(g),
                f"component dimensions differ: {theta.rows} vs {theta.cols}",
            )
        try:
            dual = theta.inverse()
        except SingularMatrix:
            raise DegeneratePairing(group.name(g), "pairing matrix is singular") from None
        pairings[g] = theta
        dual_bases[g] = dual
        euler[g] = dual.transpose()

    coproducts: dict[tuple[int, int], Tensor3] = {}
    for g in range(n):
        for h in range(n):
            gh = group.mul(g, h)
            dgh, dg, dh = a.dims[gh], a.dims[g], a.dims[h]
            right = a.product[(gh, group.inv(h))]  # lands in grade g
            dual_h = dual_bases[h]
            left = a.product[(group.inv(g), gh)]  # lands in grade h
            dual_g = dual_bases[g]
            grid = []
            for c in range(dgh):
                plane = []
                for i in range(dg):
                    row = []
                    for j in range(dh):
                        # multiply basis_c by the dual basis of h on the right
                        v1 = sum(
                            (
                                right.data[c][b][i] * dual_h.data[b][j]
                                for b in range(dual_h.rows)
                            ),
                            ZERO,
                        )
                        # multiply basis_c by the dual basis of g on the left
                        v2 = sum(
                            (
                                dual_g.data[b][i] * left.data[b][c][j]
                                for b in range(dual_g.rows)
                            ),
                            ZERO,
                        )
                        if v1 != v2:
                            raise CoproductMismatch(
                                "coproduct formulas disagree for grades "
                                f"({group.name(g)}, {group.name(h)}) at entry "
                                f"({c}, {i}, {j}): {v1} vs {v2}; the input violates "
                                "the algebra laws"
                            )
                        row.append(v1)
                    plane.append(tuple(row))
                grid.append(tuple(plane))
            coproducts[(g, h)] = Tensor3._wrap(dgh, dg, dh, tuple(grid))

    return DerivedStructure(pairings, dual_bases, coproducts, euler)


# ---------------------------------------------------------------------------
# Law checking


def _name_ctx(group: FiniteGroup, **kwargs) -> tuple[tuple[str, str], ...]:
    out = []
    for key, value in kwargs.items():
        if isinstance(value, int):
            out.append((key, group.name(value)))
        else:
            out.append((key, str(value)))
    return tuple(out)


def check_axioms(a: GFrobeniusAlgebra) -> CheckReport:
    """Exhaustively verify the defining laws on all basis and group elements.

    Failures are report entries (with the first counterexample), never
    exceptions.  The torus identity needs dual bases, so it is reported as
    blocked when some pairing is degenerate.
    """
    group = a.group
    n = group.order
    e = group.identity
    dims = a.dims
    entries: list[CheckEntry] = []

    def basis(g: int):
        return [basis_vector(dims[g], i) for i in range(dims[g])]

    # associativity of the product
    witness = None
    for g in range(n):
        for h in range(n):
            gh = group.mul(g, h)
            for k in range(n):
                hk = group.mul(h, k)
                for i, bi in enumerate(basis(g)):
                    for j, bj in enumerate(basis(h)):
                        via_left = a.apply_product(g, h, bi, bj)
                        for l, bl in enumerate(basis(k)):
                            lhs = a.apply_product(gh, k, via_left, bl)
                            rhs = a.apply_product(g, hk, bi, a.apply_product(h, k, bj, bl))
                            if lhs != rhs:
                                witness = Witness(
                                    _name_ctx(group, g=g, h=h, k=k, i=i, j=j, l=l),
                                    vector_literal(lhs),
                                    vector_literal(rhs),
                                )
                                break
                        if witness:
                            break
                    if witness:
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    entries.append(CheckEntry("product-associativity", witness is None, witness))

    # unit laws
    witness = None
    for g in range(n):
        for j, bj in enumerate(basis(g)):
            left = a.apply_product(e, g, a.unit, bj)
            right = a.apply_product(g, e, bj, a.unit)
            if left != bj:
                witness = Witness(
                    _name_ctx(group, g=g, j=j, side="left"),
                    vector_literal(left),
                    vector_literal(bj),
                )
                break
            if right != bj:
                witness = Witness(
                    _name_ctx(group, g=g, j=j, side="right"),
                    vector_literal(right),
                    vector_literal(bj),
                )
                break
        if witness:
            break
    entries.append(CheckEntry("unit-laws", witness is None, witness))

    # the identity element acts as the identity map
    witness = None
    for g in range(n):
        if a.action[(e, g)] != Matrix.identity(dims[g]):
            witness = Witness(
                _name_ctx(group, g=g),
                "action block of the identity element",
                "identity matrix",
            )
            break
    entries.append(CheckEntry("action-of-identity", witness is None, witness))

    # the action is a group homomorphism, blockwise
    witness = None
    for k in range(n):
        for l in range(n):
            kl = group.mul(k, l)
            for g in range(n):
                composed = a.action[(k, group.conj(l, g))] @ a.action[(l, g)]
                direct = a.action[(kl, g)]
                if composed != direct:
                    witness = Witness(
                        _name_ctx(group, k=k, l=l, g=g),
                        matrix_literal(composed),
                        matrix_literal(direct),
                    )
                    break
            if witness:
                break
        if witness:
            break
    entries.append(CheckEntry("action-homomorphism", witness is None, witness))

    # each action map is an algebra automorphism (multiplicative, fixes unit)
    witness = None
    for k in range(n):
        if a.apply_action(k, e, a.unit) != a.unit:
            witness = Witness(
                _name_ctx(group, k=k),
                vector_literal(a.apply_action(k, e, a.unit)),
                vector_literal(a.unit),
            )
            break
        for g in range(n):
            for h in range(n):
                gh = group.mul(g, h)
                for i, bi in enumerate(basis(g)):
                    for j, bj in enumerate(basis(h)):
                        lhs = a.apply_action(k, gh, a.apply_product(g, h, bi, bj))
                        rhs = a.apply_product(
                            group.conj(k, g),
                            group.conj(k, h),
                            a.apply_action(k, g, bi),
                            a.apply_action(k, h, bj),
                        )
                        if lhs != rhs:
                            witness = Witness(
                                _name_ctx(group, k=k, g=g, h=h, i=i, j=j),
                                vector_literal(lhs),
                                vector_literal(rhs),
                            )
                            break
                    if witness:
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    entries.append(CheckEntry("action-automorphism", witness is None, witness))

    # each element acts trivially on its own grade
    witness = None
    for g in range(n):
        if a.action[(g, g)] != Matrix.identity(dims[g]):
            witness = Witness(
                _name_ctx(group, g=g),
                matrix_literal(a.action[(g, g)]),
                "identity matrix",
            )
            break
    entries.append(CheckEntry("action-trivial-on-own-grade", witness is None, witness))

    # the trace is invariant under the action
    witness = None
    for h in range(n):
        for t, bt in enumerate(basis(e)):
            moved = a.trace_of(a.apply_action(h, e, bt))
            if moved != a.trace[t]:
                witness = Witness(
                    _name_ctx(group, h=h, t=t),
                    format_scalar(moved),
                    format_scalar(a.trace[t]),
                )
                break
        if witness:
            break
    entries.append(CheckEntry("trace-invariance", witness is None, witness))

    # nondegenerate pairing on every grade
    witness = None
    degenerate = False
    for g in range(n):
        gi = group.inv(g)
        if dims[g] != dims[gi]:
            witness = Witness(
                _name_ctx(group, g=g),
                f"dim {dims[g]}",
                f"dim {dims[gi]} of the inverse grade",
            )
            degenerate = True
            break
        theta = pairing_matrix(a, g)
        if theta.det() == ZERO:
            witness = Witness(_name_ctx(group, g=g), "det 0", "nonzero determinant")
            degenerate = True
            break
    entries.append(CheckEntry("pairing-nondegenerate", witness is None, witness))

    # twisted commutativity
    witness = None
    for g in range(n):
        for h in range(n):
            tw = group.conj(g, h)
            for i, bi in enumerate(basis(g)):
                for j, bj in enumerate(basis(h)):
                    lhs = a.apply_product(g, h, bi, bj)
                    rhs = a.apply_product(tw, g, a.apply_action(g, h, bj), bi)
                    if lhs != rhs:
                        witness = Witness(
                            _name_ctx(group, g=g, h=h, i=i, j=j),
                            vector_literal(lhs),
                            vector_literal(rhs),
                        )
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    entries.append(CheckEntry("twisted-commutativity", witness is None, witness))

    # torus identity over dual bases
    if degenerate:
        entries.append(
            CheckEntry(
                "torus-identity",
                False,
                Witness(
                    (("blocked", "degenerate pairing; identity not evaluated"),),
                    "",
                    "",
                ),
            )
        )
    else:
        duals = {g: pairing_matrix(a, g).inverse() for g in range(n)}
        witness = None
        for g in range(n):
            gi = group.inv(g)
            for h in range(n):
                hi = group.inv(h)
                lhs = zero_vector(dims[group.mul(group.conj(h, g), gi)])
                for i in range(dims[g]):
                    moved = a.apply_action(h, g, basis_vector(dims[g], i))
                    lhs = vector_add(
                        lhs,
                        a.apply_product(
                            group.conj(h, g), gi, moved, duals[g].column_vector(i)
                        ),
                    )
                rhs = zero_vector(dims[group.mul(h, group.conj(g, hi))])
                for i in range(dims[h]):
                    moved = a.apply_action(g, hi, duals[h].column_vector(i))
                    rhs = vector_add(
                        rhs,
                        a.apply_product(
                            h, group.conj(g, hi), basis_vector(dims[h], i), moved
                        ),
                    )
                if lhs != rhs:
                    witness = Witness(
                        _name_ctx(group, g=g, h=h),
                        vector_literal(lhs),
                        vector_literal(rhs),
                    )
                    break
            if witness:
                break
        entries.append(CheckEntry("torus-identity", witness is None, witness))

    return CheckReport(tuple(entries))


def check_frobenius_diagram(a: GFrobeniusAlgebra, d: DerivedStructure) -> CheckReport:
    """Product and coproduct exchange: (m x 1)(1 x D) = D m on all grade triples."""
    group = a.group
    n = group.order
    dims = a.dims
    witness = None
    for g in range(n):
        for h in range(n):
            gh = group.mul(g, h)
            prod_gh = a.product[(g, h)]
            for k in range(n):
                hk = group.mul(h, k)
                cop_hk = d.coproducts[(h, k)]
                prod_ghk = a.product[(g, hk)]
                cop_ghk = d.coproducts[(gh, k)]
                for i in range(dims[g]):
                    for c in range(dims[hk]):
                        for p in range(dims[gh]):
                            for b in range(dims[k]):
                                lhs = sum(
                                    (
                                        prod_gh.data[i][x][p] * cop_hk.data[c][x][b]
                                        for x in range(dims[h])
                                    ),
                                    ZERO,
                                )
                                rhs = sum(
                                    (
                                        prod_ghk.data[i][c][q] * cop_ghk.data[q][p][b]
                                        for q in range(dims[group.mul(g, hk)])
                                    ),
                                    ZERO,
                                )
                                if lhs != rhs:
                                    witness = Witness(
                                        _name_ctx(group, g=g, h=h, k=k, i=i, c=c, p=p, b=b),
                                        format_scalar(lhs),
                                        format_scalar(rhs),
                                    )
                                    break
                            if witness:
                                break
                        if witness:
                            break
                    if witness:
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    return CheckReport((CheckEntry("frobenius-relation", witness is None, witness),))


def check_cocommutativity(a: GFrobeniusAlgebra, d: DerivedStructure) -> CheckReport:
    """Twisted cocommutativity: conjugate-then-swap rewrites the coproduct."""
    group = a.group
    n = group.order
    dims = a.dims
    witness = None
    for g in range(n):
        for h in range(n):
            tw = group.conj(g, h)
            lhs_t = d.coproducts[(tw, g)]  # same source grade: tw * g = g * h
            rhs_t = d.coproducts[(g, h)]
            act = a.action[(g, h)]
            bad = None
            for c in range(dims[group.mul(g, h)]):
                for i in range(dims[tw]):
                    for j in range(dims[g]):
                        rhs = sum(
                            (
                                act.data[i][b] * rhs_t.data[c][j][b]
                                for b in range(dims[h])
                            ),
                            ZERO,
                        )
                        if lhs_t.data[c][i][j] != rhs:
                            bad = (c, i, j, lhs_t.data[c][i][j], rhs)
                            break
                    if bad:
                        break
                if bad:
                    break
            if bad:
                c, i, j, left, right = bad
                witness = Witness(
                    _name_ctx(group, g=g, h=h, c=c, i=i, j=j),
                    format_scalar(left),
                    format_scalar(right),
                )
                break
        if witness:
            break
    return CheckReport((CheckEntry("twisted-cocommutativity", witness is None, witness),))


def action_on_dual_basis_check(a: GFrobeniusAlgebra, d: DerivedStructure) -> CheckReport:
    """Conjugation equivariance of the diagonal dual-basis sums.

    Applying the action of h to both legs of the grade-g diagonal sum must
    give the diagonal sum of grade h*g*h^-1: the basis-independent form of
    aligning dual bases along conjugation.
    """
    group = a.group
    witness = None
    for g in group.elements():
        gi = group.inv(g)
        for h in group.elements():
            moved = a.action[(h, g)] @ d.euler[g] @ a.action[(h, gi)].transpose()
            target = d.euler[group.conj(h, g)]
            if moved != target:
                witness = Witness(
                    _name_ctx(group, g=g, h=h),
                    matrix_literal(moved),
                    matrix_literal(target),
                )
                break
        if witness:
            break
    return CheckReport((CheckEntry("dual-basis-equivariance", witness is None, witness),))

"""Evaluation of surface words into exact linear maps, and the machine
checks that the value of a surface does not depend on how it is cut.

Index flattening: a boundary signature (c1, .., cr) maps to the tensor
product of the attached graded components, flattened with the leftmost
circle as the most significant index (the same convention as the Kronecker
product in exactlin).  Any single consistent choice would do, but matrix
equality across decompositions requires fixing one.

Closed surfaces: a genus-h labelling (a1, b1, .., ah, bh) is flat when the
left-to-right product of the commutators b*a*b^-1*a^-1 is the identity.
The handle attached to (a, b) contributes the element obtained by acting
with b on each basis vector of grade a and multiplying by its dual; the
invariant is the trace of the product of all handle contributions.  No
global normalisation (no 1/|G| weight) is applied; weighting belongs to
callers.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .algebra import DerivedStructure, GFrobeniusAlgebra, derive
from .cobordism import (
    Cobordism,
    Piece,
    PieceKind,
    cap,
    case_label_count,
    cerf_case_words,
    cup,
    cyl,
    id_piece,
    merge,
    normalize_cylinder,
    split,
    swap,
)
from .errors import BudgetExceeded, EngineError, FlatnessViolation, SignatureMismatch
from .exactlin import (
    ONE,
    ZERO,
    Matrix,
    Vector,
    matrix_literal,
    vector_add,
    zero_vector,
)
from .groups import FiniteGroup
from .report import CheckEntry, CheckReport, Witness


@dataclass(frozen=True)
class BlockLinearMap:
    """An exact linear map between labelled boundary signatures."""

    domain: tuple[int, ...]
    codomain: tuple[int, ...]
    matrix: Matrix


class Evaluator:
    """Caches per-piece matrices for one algebra across many evaluations."""

    def __init__(self, algebra: GFrobeniusAlgebra, derived: DerivedStructure | None = None):
        self.algebra = algebra
        self.derived = derived if derived is not None else derive(algebra)
        self._pieces: dict[Piece, Matrix] = {}

    def signature_dimension(self, signature) -> int:
        dim = 1
        for g in signature:
            dim *= self.algebra.dims[g]
        return dim

    def piece_matrix(self, piece: Piece) -> Matrix:
        cached = self._pieces.get(piece)
        if cached is not None:
            return cached
        a = self.algebra
        kind, labels = piece.kind, piece.labels
        if kind is PieceKind.ID:
            out = Matrix.identity(a.dims[labels[0]])
        elif kind is PieceKind.CYL:
            g, k = labels
            out = a.action[(k, g)]
        elif kind is PieceKind.MERGE:
            g, h = labels
            t = a.product[(g, h)]
            grid = [
                tuple(t.data[i][j][p] for i in range(t.dim0) for j in range(t.dim1))
                for p in range(t.dim2)
            ]
            out = Matrix._wrap(t.dim2, t.dim0 * t.dim1, tuple(grid))
        elif kind is PieceKind.SPLIT:
            g, h = labels
            t = self.derived.coproducts[(g, h)]
            grid = [
                tuple(t.data[c][i][j] for c in range(t.dim0))
                for i in range(t.dim1)
                for j in range(t.dim2)
            ]
            out = Matrix._wrap(t.dim1 * t.dim2, t.dim0, tuple(grid))
        elif kind is PieceKind.CAP:
            out = Matrix.column(a.unit)
        elif kind is PieceKind.CUP:
            out = Matrix.row(a.trace)
        else:  # SWAP
            g, h = labels
            dg, dh = a.dims[g], a.dims[h]
            grid = [[ZERO] * (dg * dh) for _ in range(dh * dg)]
            for i in range(dg):
                for j in range(dh):
                    grid[j * dg + i][i * dh + j] = ONE
            out = Matrix(dh * dg, dg * dh, grid)
        self._pieces[piece] = out
        return out

    def layer_matrix(self, layer) -> Matrix:
        out = None
        for piece in layer:
            m = self.piece_matrix(piece)
            out = m if out is None else out.kron(m)
        return Matrix.identity(1) if out is None else out

    def __call__(self, word: Cobordism) -> BlockLinearMap:
        if word.group != self.algebra.group:
            raise SignatureMismatch("word and algebra use different groups")
        total = Matrix.identity(self.signature_dimension(word.dom))
        for layer in word.layers:
            total = self.layer_matrix(layer) @ total
        return BlockLinearMap(word.dom, word.cod, total)


def evaluate(
    a: GFrobeniusAlgebra, word: Cobordism, derived: DerivedStructure | None = None
) -> BlockLinearMap:
    """Value of a surface word: tensor products across each layer, matrix
    products along the word."""
    return Evaluator(a, derived)(word)


def _labels_ctx(group: FiniteGroup, labels) -> tuple[tuple[str, str], ...]:
    return (("labels", ", ".join(group.name(g) for g in labels)),)


# ---------------------------------------------------------------------------
# Well-definedness checks


def dehn_invariance_check(
    a: GFrobeniusAlgebra, derived: DerivedStructure | None = None
) -> CheckReport:
    """Twist-equivalent cylinders evaluate identically.

    Covers the self-conjugating cylinder being the identity map, twisting
    either boundary of an arbitrary cylinder (exponents 0..2), and equality
    across each full twist class grouped by normal form.
    """
    ev = Evaluator(a, derived)
    group = a.group
    n = group.order
    entries: list[CheckEntry] = []

    witness = None
    for g in range(n):
        value = ev.piece_matrix(cyl(g, g))
        if value != Matrix.identity(a.dims[g]):
            witness = Witness(
                (("g", group.name(g)),), matrix_literal(value), "identity matrix"
            )
            break
    entries.append(CheckEntry("cylinder-self-twist-identity", witness is None, witness))

    witness = None
    for g in range(n):
        for k in range(n):
            base = ev.piece_matrix(cyl(g, k))
            h = group.conj(k, g)
            for twist_out in range(3):
                for twist_in in range(3):
                    conjugator = group.mul(
                        group.mul(group.power(h, twist_out), k), group.power(g, twist_in)
                    )
                    value = ev.piece_matrix(cyl(g, conjugator))
                    if value != base:
                        witness = Witness(
                            (
                                ("g", group.name(g)),
                                ("k", group.name(k)),
                                ("n", str(twist_out)),
                                ("m", str(twist_in)),
                            ),
                            matrix_literal(value),
                            matrix_literal(base),
                        )
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break
    entries.append(CheckEntry("dehn-twist-invariance", witness is None, witness))

    witness = None
    for g in range(n):
        by_normal_form: dict[int, tuple[int, Matrix]] = {}
        for k in range(n):
            nf = normalize_cylinder(group, g, k)
            value = ev.piece_matrix(cyl(g, k))
            if nf not in by_normal_form:
                by_normal_form[nf] = (k, value)
            elif by_normal_form[nf][1] != value:
                witness = Witness(
                    (
                        ("g", group.name(g)),
                        ("k", group.name(k)),
                        ("k'", group.name(by_normal_form[nf][0])),
                    ),
                    matrix_literal(value),
                    matrix_literal(by_normal_form[nf][1]),
                )
                break
        if witness:
            break
    entries.append(CheckEntry("dehn-normal-form-constant", witness is None, witness))

    return CheckReport(tuple(entries))


def pants_ordering_check(
    a: GFrobeniusAlgebra, derived: DerivedStructure | None = None
) -> CheckReport:
    """The two boundary orderings of a pair of pants agree up to conjugation:
    merging after a crossing equals merging then twisting by the second
    input's label."""
    ev = Evaluator(a, derived)
    group = a.group
    witness = None
    for g in group.elements():
        for h in group.elements():
            crossed = ev(Cobordism(group, ((swap(g, h),), (merge(h, g),))))
            twisted = ev(Cobordism(group, ((merge(g, h),), (cyl(group.mul(g, h), h),))))
            if crossed.matrix != twisted.matrix:
                witness = Witness(
                    (("g", group.name(g)), ("h", group.name(h))),
                    matrix_literal(crossed.matrix),
                    matrix_literal(twisted.matrix),
                )
                break
        if witness:
            break
    return CheckReport((CheckEntry("pants-ordering", witness is None, witness),))


def cerf_check(
    a: GFrobeniusAlgebra,
    case: str,
    labels=None,
    all_labels: bool = False,
    derived: DerivedStructure | None = None,
) -> CheckReport:
    """Evaluate every alternative decomposition of a move case and demand
    exact matrix equality, for one labelling or exhaustively over all.

    One report entry per alternative word (compared against the first),
    carrying the first failing labelling as witness.
    """
    ev = Evaluator(a, derived)
    group = a.group
    want = case_label_count(case)
    if all_labels:
        labelings = itertools.product(group.elements(), repeat=want)
    else:
        if labels is None:
            labels = ()
        labelings = iter([tuple(labels)])

    witnesses: dict[int, Witness | None] = {}
    alternatives = 0
    for labelling in labelings:
        words = cerf_case_words(group, case, labelling)
        alternatives = len(words) - 1
        if {(w.dom, w.cod) for w in words} != {(words[0].dom, words[0].cod)}:
            raise EngineError(f"move case {case} produced mismatched signatures")
        base = ev(words[0])
        for j, w in enumerate(words[1:], start=1):
            if witnesses.get(j) is not None:
                continue
            value = ev(w)
            if value.matrix != base.matrix:
                witnesses[j] = Witness(
                    _labels_ctx(group, labelling)
                    + (("alternative", str(j)),),
                    matrix_literal(value.matrix),
                    matrix_literal(base.matrix),
                )
    entries = tuple(
        CheckEntry(f"cerf-{case}-alt{j}", witnesses.get(j) is None, witnesses.get(j))
        for j in range(1, alternatives + 1)
    )
    return CheckReport(entries)


# ---------------------------------------------------------------------------
# Closed surfaces


def _flatness_defect(group: FiniteGroup, holonomies) -> tuple[list[tuple[int, int]], int]:
    if len(holonomies) % 2 != 0:
        raise FlatnessViolation("holonomies must come in pairs (a_i, b_i)")
    pairs = list(zip(holonomies[0::2], holonomies[1::2]))
    product = group.identity
    for x, y in pairs:
        commutator = group.mul(
            group.mul(y, x), group.mul(group.inv(y), group.inv(x))
        )
        product = group.mul(product, commutator)
    return pairs, product


def handle_element(
    a: GFrobeniusAlgebra, d: DerivedStructure, x: int, y: int
) -> tuple[int, Vector]:
    """The handle contribution for the pair (x, y): act with y on each basis
    vector of grade x and multiply by its dual partner.  Returns the grade
    (the commutator y x y^-1 x^-1) and the element."""
    group = a.group
    moved_grade = group.conj(y, x)
    xi = group.inv(x)
    grade = group.mul(moved_grade, xi)
    dual = d.dual_bases[x]
    act = a.action[(y, x)]
    out = zero_vector(a.dims[grade])
    for i in range(a.dims[x]):
        out = vector_add(
            out,
            a.apply_product(
                moved_grade, xi, act.column_vector(i), dual.column_vector(i)
            ),
        )
    return grade, out


def closed_surface_word(group: FiniteGroup, holonomies) -> Cobordism:
    """An explicit cap/split/cyl/merge/cup word for the closed genus-h
    surface with the given flat holonomies."""
    pairs, defect = _flatness_defect(group, holonomies)
    if defect != group.identity:
        raise FlatnessViolation(
            "commutator product is "
            f"{group.name(defect)}, not the identity"
        )
    layers: list[tuple] = [(cap(),)]
    current = group.identity
    for x, y in pairs:
        moved = group.conj(y, x)
        xi = group.inv(x)
        layers.append((id_piece(current), cap()))
        layers.append((id_piece(current), split(x, xi)))
        layers.append((id_piece(current), cyl(x, y), id_piece(xi)))
        layers.append((merge(current, moved), id_piece(xi)))
        step = group.mul(current, moved)
        layers.append((merge(step, xi),))
        current = group.mul(step, xi)
    layers.append((cup(),))
    return Cobordism(group, layers)


def closed_invariant(
    a: GFrobeniusAlgebra,
    holonomies,
    derived: DerivedStructure | None = None,
    cross_check: bool = True,
) -> Fraction:
    """Scalar value of the closed labelled surface of genus len(holonomies)/2.

    Computed as the trace of the product of handle contributions; for genus
    at most two the result is cross-checked against direct evaluation of an
    explicit word built from the elementary pieces.
    """
    group = a.group
    pairs, defect = _flatness_defect(group, holonomies)
    if defect != group.identity:
        raise FlatnessViolation(
            f"commutator product is {group.name(defect)}, not the identity"
        )
    d = derived if derived is not None else derive(a)
    vec = a.unit
    grade = group.identity
    for x, y in pairs:
        handle_grade, handle = handle_element(a, d, x, y)
        vec = a.apply_product(grade, handle_grade, vec, handle)
        grade = group.mul(grade, handle_grade)
    value = a.trace_of(vec)
    if cross_check and len(pairs) <= 2:
        word = closed_surface_word(group, holonomies)
        by_word = evaluate(a, word, d).matrix.data[0][0]
        if by_word != value:
            raise EngineError(
                f"handle formula gives {value} but the explicit word gives {by_word}"
            )
    return value


def hom_count_oracle(group: FiniteGroup, genus: int, budget: int = 10_000_000) -> int:
    """Count flat labellings of the closed genus-h surface by brute force,
    i.e. 2h-tuples whose commutator product is the identity."""
    if genus < 0:
        raise ValueError("genus must be non-negative")
    total = group.order ** (2 * genus)
    if total > budget:
        raise BudgetExceeded(f"{total} tuples exceed the budget of {budget}")
    count = 0
    for tup in itertools.product(group.elements(), repeat=2 * genus):
        _, defect = _flatness_defect(group, tup)
        if defect == group.identity:
            count += 1
    return count


# ---------------------------------------------------------------------------
# Functoriality probes


def word_functoriality_witness(ev: Evaluator, word: Cobordism) -> Witness | None:
    """Check that the word's value equals suffix times prefix across every
    layer boundary; None when all agree."""
    layer_mats = [ev.layer_matrix(layer) for layer in word.layers]
    dim_dom = ev.signature_dimension(word.dom)
    dim_cod = ev.signature_dimension(word.cod)
    prefixes = [Matrix.identity(dim_dom)]
    for m in layer_mats:
        prefixes.append(m @ prefixes[-1])
    total = prefixes[-1]
    suffix = Matrix.identity(dim_cod)
    for i in range(len(layer_mats), -1, -1):
        if suffix @ prefixes[i] != total:
            return Witness(
                (("split-after-layer", str(i)), ("word", word.to_text())),
                matrix_literal(suffix @ prefixes[i]),
                matrix_literal(total),
            )
        if i > 0:
            suffix = suffix @ layer_mats[i - 1]
    return None

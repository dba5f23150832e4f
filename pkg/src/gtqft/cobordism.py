"""Combinatorial surface words over a finite group.

A cobordism is a word: a sequence of layers, each layer a parallel list of
elementary pieces.  Boundary circles carry group-element labels (their
holonomies) and are listed left to right.  Adjacent layers must agree:
the output signature of one layer is the input signature of the next.

Elementary pieces and their boundary types (e is the group identity):

    id(g)       [g] -> [g]
    cyl(g;k)    [g] -> [k g k^-1]      conjugating cylinder
    merge(g,h)  [g, h] -> [g h]        pair of pants, two in
    split(g,h)  [g h] -> [g, h]        pair of pants, two out
    cap         [] -> [e]              disk creating a circle
    cup         [e] -> []              disk closing a circle
    swap(g,h)   [g, h] -> [h, g]       crossing

Text grammar (whitespace insignificant, "#" starts a line comment):

    word  := layer (";" layer)*
    layer := piece ("*" piece)*
    piece := "id(" elt ")" | "cyl(" elt ";" elt ")" | "merge(" elt "," elt ")"
           | "split(" elt "," elt ")" | "cap" | "cup" | "swap(" elt "," elt ")"

Element names come from the active group; the piece keywords are reserved
at the start of a piece but remain usable as element names inside
parentheses.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from typing import Sequence

from .errors import ParseError, SignatureMismatch, UnknownElement
from .groups import FiniteGroup

Signature = tuple[int, ...]


class PieceKind(enum.Enum):
    ID = "id"
    CYL = "cyl"
    MERGE = "merge"
    SPLIT = "split"
    CAP = "cap"
    CUP = "cup"
    SWAP = "swap"


_LABEL_COUNT = {
    PieceKind.ID: 1,
    PieceKind.CYL: 2,
    PieceKind.MERGE: 2,
    PieceKind.SPLIT: 2,
    PieceKind.CAP: 0,
    PieceKind.CUP: 0,
    PieceKind.SWAP: 2,
}


@dataclass(frozen=True)
class Piece:
    kind: PieceKind
    labels: tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.labels) != _LABEL_COUNT[self.kind]:
            raise SignatureMismatch(
                f"{self.kind.value} takes {_LABEL_COUNT[self.kind]} labels, "
                f"got {len(self.labels)}"
            )

    def dom(self, group: FiniteGroup) -> Signature:
        g = self.labels
        if self.kind is PieceKind.ID:
            return (g[0],)
        if self.kind is PieceKind.CYL:
            return (g[0],)
        if self.kind is PieceKind.MERGE:
            return (g[0], g[1])
        if self.kind is PieceKind.SPLIT:
            return (group.mul(g[0], g[1]),)
        if self.kind is PieceKind.CAP:
            return ()
        if self.kind is PieceKind.CUP:
            return (group.identity,)
        return (g[0], g[1])

    def cod(self, group: FiniteGroup) -> Signature:
        g = self.labels
        if self.kind is PieceKind.ID:
            return (g[0],)
        if self.kind is PieceKind.CYL:
            return (group.conj(g[1], g[0]),)
        if self.kind is PieceKind.MERGE:
            return (group.mul(g[0], g[1]),)
        if self.kind is PieceKind.SPLIT:
            return (g[0], g[1])
        if self.kind is PieceKind.CAP:
            return (group.identity,)
        if self.kind is PieceKind.CUP:
            return ()
        return (g[1], g[0])

    def text(self, group: FiniteGroup) -> str:
        name = group.name
        if self.kind is PieceKind.ID:
            return f"id({name(self.labels[0])})"
        if self.kind is PieceKind.CYL:
            return f"cyl({name(self.labels[0])};{name(self.labels[1])})"
        if self.kind in (PieceKind.MERGE, PieceKind.SPLIT, PieceKind.SWAP):
            return f"{self.kind.value}({name(self.labels[0])},{name(self.labels[1])})"
        return self.kind.value


def id_piece(g: int) -> Piece:
    return Piece(PieceKind.ID, (g,))


def cyl(g: int, k: int) -> Piece:
    return Piece(PieceKind.CYL, (g, k))


def merge(g: int, h: int) -> Piece:
    return Piece(PieceKind.MERGE, (g, h))


def split(g: int, h: int) -> Piece:
    return Piece(PieceKind.SPLIT, (g, h))


def cap() -> Piece:
    return Piece(PieceKind.CAP)


def cup() -> Piece:
    return Piece(PieceKind.CUP)


def swap(g: int, h: int) -> Piece:
    return Piece(PieceKind.SWAP, (g, h))


def _format_signature(group: FiniteGroup, sig: Signature) -> str:
    return "[" + ", ".join(group.name(g) for g in sig) + "]"


class Cobordism:
    """A type-checked word of layers.  Immutable after construction."""

    __slots__ = ("group", "layers", "dom", "cod")

    def __init__(
        self,
        group: FiniteGroup,
        layers: Sequence[Sequence[Piece]],
        domain: Signature | None = None,
    ):
        layers = tuple(tuple(layer) for layer in layers)
        n = group.order
        for layer in layers:
            for piece in layer:
                if any(not 0 <= lab < n for lab in piece.labels):
                    raise SignatureMismatch("piece label outside the group's element range")
        if layers:
            current = tuple(g for piece in layers[0] for g in piece.dom(group))
            if domain is not None and tuple(domain) != current:
                raise SignatureMismatch(
                    f"declared domain {_format_signature(group, tuple(domain))} does not "
                    f"match first layer {_format_signature(group, current)}"
                )
            dom = current
            for index, layer in enumerate(layers):
                layer_dom = tuple(g for piece in layer for g in piece.dom(group))
                if layer_dom != current:
                    raise SignatureMismatch(
                        f"layer {index + 1} expects {_format_signature(group, layer_dom)} "
                        f"but receives {_format_signature(group, current)}"
                    )
                current = tuple(g for piece in layer for g in piece.cod(group))
            cod = current
        else:
            dom = cod = tuple(domain) if domain is not None else ()
        self.group = group
        self.layers = layers
        self.dom = dom
        self.cod = cod

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cobordism):
            return NotImplemented
        return self.group == other.group and self.layers == other.layers and self.dom == other.dom

    def __repr__(self) -> str:
        return f"Cobordism({_format_signature(self.group, self.dom)} -> " + (
            f"{_format_signature(self.group, self.cod)}, {len(self.layers)} layers)"
        )

    def to_text(self) -> str:
        return " ; ".join(
            " * ".join(piece.text(self.group) for piece in layer) for layer in self.layers
        )


def identity_word(group: FiniteGroup, signature: Signature) -> Cobordism:
    """One layer of id pieces on the given signature (empty word if empty)."""
    if not signature:
        return Cobordism(group, (), domain=())
    return Cobordism(group, ((tuple(id_piece(g) for g in signature)),))


def compose(c1: Cobordism, c2: Cobordism) -> Cobordism:
    """Glue c2 after c1; their boundary signatures must match."""
    if c1.group != c2.group:
        raise SignatureMismatch("cannot compose words over different groups")
    if c1.cod != c2.dom:
        raise SignatureMismatch(
            f"cannot glue {_format_signature(c1.group, c1.cod)} onto "
            f"{_format_signature(c1.group, c2.dom)}"
        )
    return Cobordism(c1.group, c1.layers + c2.layers, domain=c1.dom)


def tensor(c1: Cobordism, c2: Cobordism) -> Cobordism:
    """Place two words side by side; the shorter is padded with id layers."""
    if c1.group != c2.group:
        raise SignatureMismatch("cannot tensor words over different groups")
    group = c1.group
    depth = max(len(c1.layers), len(c2.layers))

    def padded(c: Cobordism) -> list[tuple[Piece, ...]]:
        layers = list(c.layers)
        pad = tuple(id_piece(g) for g in c.cod)
        while len(layers) < depth:
            layers.append(pad)
        return layers

    layers = [a + b for a, b in zip(padded(c1), padded(c2))]
    return Cobordism(group, layers, domain=c1.dom + c2.dom)


def dual(c: Cobordism) -> Cobordism:
    """Reverse the word: layers run backwards and every piece is flipped.

    merge <-> split, cap <-> cup, a conjugating cylinder reverses to the
    cylinder conjugating back, and swaps exchange their labels.
    """
    group = c.group

    def flip(piece: Piece) -> Piece:
        kind, labels = piece.kind, piece.labels
        if kind is PieceKind.MERGE:
            return split(labels[0], labels[1])
        if kind is PieceKind.SPLIT:
            return merge(labels[0], labels[1])
        if kind is PieceKind.CAP:
            return cup()
        if kind is PieceKind.CUP:
            return cap()
        if kind is PieceKind.CYL:
            g, k = labels
            return cyl(group.conj(k, g), group.inv(k))
        if kind is PieceKind.SWAP:
            return swap(labels[1], labels[0])
        return piece

    layers = tuple(tuple(flip(p) for p in layer) for layer in reversed(c.layers))
    return Cobordism(group, layers, domain=c.cod)


# ---------------------------------------------------------------------------
# Parsing


_PUNCT = ";*(),"


def _tokenize(text: str):
    tokens = []
    i = 0
    line, col = 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        if ch in _PUNCT:
            tokens.append((ch, ch, line, col))
            i += 1
            col += 1
            continue
        start = i
        start_col = col
        while i < n and not text[i].isspace() and text[i] not in _PUNCT and text[i] != "#":
            i += 1
            col += 1
        tokens.append(("name", text[start:i], line, start_col))
    return tokens


class _Parser:
    def __init__(self, text: str, group: FiniteGroup):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.group = group
        self.end_line = text.count("\n") + 1
        self.end_col = len(text) - (text.rfind("\n") + 1) + 1

    def _here(self):
        if self.pos < len(self.tokens):
            tok = self.tokens[self.pos]
            return tok[2], tok[3]
        return self.end_line, self.end_col

    def error(self, message: str, expected: str = "") -> ParseError:
        line, col = self._here()
        return ParseError(message, line, col, expected)

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, kind: str, expected: str):
        tok = self.peek()
        if tok is None or tok[0] != kind:
            found = "end of input" if tok is None else repr(tok[1])
            raise self.error(f"found {found}", expected)
        self.pos += 1
        return tok

    def element(self) -> int:
        tok = self.take("name", "an element name")
        try:
            return self.group.index(tok[1])
        except UnknownElement:
            raise ParseError(
                f"unknown element {tok[1]!r}", tok[2], tok[3], "an element of the group"
            ) from None

    def piece(self) -> Piece:
        tok = self.take("name", '"id", "cyl", "merge", "split", "cap", "cup" or "swap"')
        keyword = tok[1]
        if keyword == "cap":
            return cap()
        if keyword == "cup":
            return cup()
        if keyword == "id":
            self.take("(", '"("')
            g = self.element()
            self.take(")", '")"')
            return id_piece(g)
        if keyword == "cyl":
            self.take("(", '"("')
            g = self.element()
            self.take(";", '";"')
            k = self.element()
            self.take(")", '")"')
            return cyl(g, k)
        if keyword in ("merge", "split", "swap"):
            self.take("(", '"("')
            g = self.element()
            self.take(",", '","')
            h = self.element()
            self.take(")", '")"')
            return {"merge": merge, "split": split, "swap": swap}[keyword](g, h)
        raise ParseError(
            f"unknown piece {keyword!r}",
            tok[2],
            tok[3],
            '"id", "cyl", "merge", "split", "cap", "cup" or "swap"',
        )

    def word(self) -> Cobordism:
        layers = [self.layer()]
        while True:
            tok = self.peek()
            if tok is None:
                break
            if tok[0] == ";":
                self.pos += 1
                layers.append(self.layer())
            else:
                raise self.error(f"unexpected {tok[1]!r}", '";" or end of input')
        return Cobordism(self.group, layers)

    def layer(self) -> tuple[Piece, ...]:
        pieces = [self.piece()]
        while True:
            tok = self.peek()
            if tok is not None and tok[0] == "*":
                self.pos += 1
                pieces.append(self.piece())
            else:
                return tuple(pieces)


def parse(text: str, group: FiniteGroup) -> Cobordism:
    """Parse and type-check a surface word against the given group."""
    parser = _Parser(text, group)
    if not parser.tokens:
        raise ParseError("empty word", 1, 1, "a layer")
    return parser.word()


# ---------------------------------------------------------------------------
# Cylinder normal forms


def normalize_cylinder(group: FiniteGroup, g: int, k: int) -> int:
    """Canonical conjugator among all twist-equivalent ones.

    Cylinders from g to k g k^-1 labelled k and h^n k g^m (with
    h = k g k^-1) differ by twists of the two boundary circles and evaluate
    identically; the normal form is the least element index of that double
    coset, so two cylinders are equivalent iff their normal forms agree.
    """
    h = group.conj(k, g)
    best = k
    for x in group.cyclic_subgroup(h):
        xk = group.mul(x, k)
        for y in group.cyclic_subgroup(g):
            cand = group.mul(xk, y)
            if cand < best:
                best = cand
    return best


# ---------------------------------------------------------------------------
# Move-pair builders


_CASE_LABEL_COUNT = {
    "111": 4,
    "202": 4,
    "301": 4,
    "103": 4,
    "sphere": 0,
    "cylinder": 1,
}

CERF_CASES = ("111", "202", "301", "103", "sphere", "cylinder")


def case_label_count(case: str) -> int:
    if case not in _CASE_LABEL_COUNT:
        raise SignatureMismatch(f"unknown move case {case!r}; expected one of {CERF_CASES}")
    return _CASE_LABEL_COUNT[case]


def cerf_case_words(group: FiniteGroup, case: str, labels: Sequence[int]) -> list[Cobordism]:
    """Alternative decompositions of one surface, as words to compare.

    Every word in the returned list shares the same domain and codomain
    signature; a field theory must send them all to the same linear map.
    Cases "111", "202", "301" and "103" are the two-critical-point surfaces
    with labelled holonomy arcs; "sphere" and "cylinder" cover the
    birth/death insertions of caps and cups.
    """
    want = case_label_count(case)
    labels = tuple(labels)
    if len(labels) != want:
        raise SignatureMismatch(f"case {case} takes {want} labels, got {len(labels)}")
    m, inv = group.mul, group.inv
    e = group.identity

    if case == "sphere":
        return [
            Cobordism(group, ((cap(),), (cup(),))),
            Cobordism(group, ((cap(),), (id_piece(e),), (cup(),))),
        ]

    if case == "cylinder":
        (g,) = labels
        return [
            Cobordism(group, ((id_piece(g),),)),
            Cobordism(group, ((cyl(g, e),),)),
            Cobordism(group, ((cyl(g, g),),)),
            Cobordism(group, ((id_piece(g), cap()), (merge(g, e),))),
            Cobordism(group, ((cap(), id_piece(g)), (merge(e, g),))),
            Cobordism(group, ((split(g, e),), (id_piece(g), cup()))),
            Cobordism(group, ((split(e, g),), (cup(), id_piece(g)))),
        ]

    a, b, c, d = labels
    ab, cd = m(a, b), m(c, d)
    ba, dc = m(b, a), m(d, c)

    if case == "111":
        # one handle between a single input and a single output circle
        abcd = m(ab, cd)
        badc = m(ba, dc)
        da, bc = m(d, a), m(b, c)
        ad, cb = m(a, d), m(c, b)
        first = Cobordism(
            group,
            (
                (split(ab, cd),),
                (cyl(ab, b), cyl(cd, d)),
                (merge(ba, dc),),
                (cyl(badc, inv(b)),),
            ),
        )
        second = Cobordism(
            group,
            (
                (cyl(abcd, d),),
                (split(da, bc),),
                (cyl(da, inv(d)), cyl(bc, c)),
                (merge(ad, cb),),
            ),
        )
        return [first, second]

    if case == "202":
        # four-holed sphere: the vertical cut in both critical orders and
        # the two horizontal cuts
        abcd = m(ab, cd)
        badc = m(ba, dc)
        bc, da = m(b, c), m(d, a)
        cb, ad = m(c, b), m(a, d)
        ca_ = m(c, inv(a))
        _ac = m(inv(a), c)
        _ca = m(inv(c), a)
        ac_ = m(a, inv(c))
        vertical_first = Cobordism(
            group,
            (
                (merge(ab, cd),),
                (cyl(abcd, inv(a)),),
                (split(bc, da),),
                (cyl(bc, c), cyl(da, a)),
            ),
        )
        vertical_second = Cobordism(
            group,
            (
                (cyl(ab, inv(a)), cyl(cd, inv(c))),
                (merge(ba, dc),),
                (cyl(badc, c),),
                (split(cb, ad),),
            ),
        )
        horizontal_first = Cobordism(
            group,
            (
                (id_piece(ab), split(ca_, ad)),
                (cyl(ab, inv(a)), cyl(ca_, inv(a)), id_piece(ad)),
                (merge(ba, _ac), id_piece(ad)),
                (cyl(bc, c), id_piece(ad)),
            ),
        )
        horizontal_second = Cobordism(
            group,
            (
                (cyl(ab, b), id_piece(cd)),
                (split(bc, _ca), id_piece(cd)),
                (cyl(bc, c), cyl(_ca, c), id_piece(cd)),
                (id_piece(cb), merge(ac_, cd)),
            ),
        )
        return [vertical_first, vertical_second, horizontal_first, horizontal_second]

    if case in ("301", "103"):
        # three inputs merged into one output, in all four bracketings; the
        # one-input three-output case is its formal reverse
        ca_ = m(c, inv(a))
        dc_ = m(d, inv(c))
        bc, bd = m(b, c), m(b, d)
        _ac = m(inv(a), c)
        _cd = m(inv(c), d)
        _ad = m(inv(a), d)
        abca_ = m(ab, ca_)
        cadc_ = m(ca_, dc_)
        words = [
            Cobordism(
                group,
                (
                    (merge(ab, ca_), id_piece(dc_)),
                    (cyl(abca_, inv(a)), cyl(dc_, inv(c))),
                    (merge(bc, _cd),),
                ),
            ),
            Cobordism(
                group,
                (
                    (id_piece(ab), merge(ca_, dc_)),
                    (cyl(ab, inv(a)), cyl(cadc_, inv(c))),
                    (merge(ba, _ad),),
                ),
            ),
            Cobordism(
                group,
                (
                    (cyl(ab, inv(a)), cyl(ca_, inv(a)), cyl(dc_, inv(c))),
                    (id_piece(ba), merge(_ac, _cd)),
                    (merge(ba, _ad),),
                ),
            ),
            Cobordism(
                group,
                (
                    (cyl(ab, inv(a)), cyl(ca_, inv(a)), cyl(dc_, inv(c))),
                    (merge(ba, _ac), id_piece(_cd)),
                    (merge(bc, _cd),),
                ),
            ),
        ]
        if case == "103":
            words = [dual(w) for w in words]
        assert len({w.dom for w in words}) == 1 and len({w.cod for w in words}) == 1
        return words

    raise SignatureMismatch(f"unknown move case {case!r}")


# ---------------------------------------------------------------------------
# Evaluation-preserving rewrites


def _splice(word: Cobordism, layer_index: int, piece_index: int, gadget) -> Cobordism:
    """Replace one piece by a multi-layer gadget with the same boundary,
    padding the sibling pieces with identity layers."""
    group = word.group
    layer = word.layers[layer_index]
    left = layer[:piece_index]
    right = layer[piece_index + 1 :]
    left_ids = tuple(id_piece(g) for p in left for g in p.cod(group))
    right_ids = tuple(id_piece(g) for p in right for g in p.cod(group))
    new_layers = [left + gadget[0] + right]
    for gadget_layer in gadget[1:]:
        new_layers.append(left_ids + gadget_layer + right_ids)
    layers = word.layers[:layer_index] + tuple(new_layers) + word.layers[layer_index + 1 :]
    return Cobordism(group, layers, domain=word.dom)


def rewrite_equivalent(word: Cobordism, rng: random.Random) -> Cobordism | None:
    """Apply one random local rewrite that cannot change the word's value.

    The catalogue: an id becomes a trivial or self-conjugating cylinder, or
    sprouts a cap/merge (unit) or split/cup (counit) pair; a cylinder picks
    up boundary twists; a merge is re-ordered through a crossing and a
    compensating cylinder.  Each rewrite is an identity of the evaluation
    for every algebra satisfying the laws, so fuzzing may assert equality.
    Returns None when the word offers no rewrite site.
    """
    group = word.group
    e = group.identity
    sites = [
        (li, pi, piece.kind)
        for li, layer in enumerate(word.layers)
        for pi, piece in enumerate(layer)
        if piece.kind in (PieceKind.ID, PieceKind.CYL, PieceKind.MERGE)
    ]
    if not sites:
        return None
    layer_index, piece_index, kind = sites[rng.randrange(len(sites))]
    layer = word.layers[layer_index]
    piece = layer[piece_index]

    def in_place(replacement: Piece) -> Cobordism:
        new_layer = layer[:piece_index] + (replacement,) + layer[piece_index + 1 :]
        layers = word.layers[:layer_index] + (new_layer,) + word.layers[layer_index + 1 :]
        return Cobordism(group, layers, domain=word.dom)

    if kind is PieceKind.ID:
        (g,) = piece.labels
        choice = rng.choice(["trivial-cylinder", "self-cylinder", "unit", "counit"])
        if choice == "trivial-cylinder":
            return in_place(cyl(g, e))
        if choice == "self-cylinder":
            return in_place(cyl(g, g))
        if choice == "unit":
            return _splice(word, layer_index, piece_index, ((id_piece(g), cap()), (merge(g, e),)))
        return _splice(word, layer_index, piece_index, ((split(g, e),), (id_piece(g), cup())))

    if kind is PieceKind.CYL:
        g, k = piece.labels
        h = group.conj(k, g)
        twisted = group.mul(
            group.mul(group.power(h, rng.randrange(3)), k), group.power(g, rng.randrange(3))
        )
        return in_place(cyl(g, twisted))

    # merge: route through the opposite ordering and conjugate back
    g, h = piece.labels
    gadget = (
        (swap(g, h),),
        (merge(h, g),),
        (cyl(group.mul(h, g), group.inv(h)),),
    )
    return _splice(word, layer_index, piece_index, gadget)


# ---------------------------------------------------------------------------
# Random generation


def random_cobordism(
    group: FiniteGroup, seed: int, size_budget: int, max_width: int = 5
) -> Cobordism:
    """Deterministic pseudo-random well-typed word with at most
    `size_budget` pieces.  Used as a fuzzing source; the same seed always
    yields the same word.
    """
    if size_budget < 1:
        raise ValueError("size_budget must be at least 1")
    rng = random.Random(seed)
    n = group.order
    e = group.identity
    budget = size_budget
    layers: list[tuple[Piece, ...]] = []

    if budget >= 2 and rng.random() < 0.2:
        layers.append((cap(),))
        budget -= 1
        sig: tuple[int, ...] = (e,)
    else:
        sig = (rng.randrange(n),)

    while budget >= len(sig) and sig:
        pieces: list[Piece] = []
        out: list[int] = []
        cost = 0
        i = 0
        while i < len(sig):
            g = sig[i]
            rest = len(sig) - i
            slack = budget - cost - rest
            if (
                slack >= 1
                and len(out) + rest < max_width
                and rng.random() < 0.08
            ):
                pieces.append(cap())
                out.append(e)
                cost += 1
                continue
            options = ["id", "cyl"]
            if g == e:
                options.append("cup")
            if i + 1 < len(sig):
                options.extend(["merge", "swap"])
            if len(out) + rest + 1 <= max_width:
                options.append("split")
            choice = rng.choice(options)
            if choice == "id":
                pieces.append(id_piece(g))
                out.append(g)
            elif choice == "cyl":
                k = rng.randrange(n)
                pieces.append(cyl(g, k))
                out.append(group.conj(k, g))
            elif choice == "cup":
                pieces.append(cup())
            elif choice == "split":
                g1 = rng.randrange(n)
                g2 = group.mul(group.inv(g1), g)
                pieces.append(split(g1, g2))
                out.extend((g1, g2))
            elif choice == "merge":
                h = sig[i + 1]
                pieces.append(merge(g, h))
                out.append(group.mul(g, h))
                i += 1
            else:  # swap
                h = sig[i + 1]
                pieces.append(swap(g, h))
                out.extend((h, g))
                i += 1
            cost += 1
            i += 1
        layers.append(tuple(pieces))
        budget -= cost
        sig = tuple(out)
        if not layers[-1]:
            break
        if rng.random() < 0.25:
            break

    if not layers:
        layers.append((id_piece(sig[0]),))
    return Cobordism(group, layers)

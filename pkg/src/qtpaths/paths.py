"""Decorated partially labelled square and Dyck paths with their statistics.

A path of size n is stored by its area word (a_1, ..., a_n), where the
i-th vertical step starts on the diagonal y = x + a_i, together with a
labelling w and a set of decorated rows. Rows are 1-based everywhere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

from .errors import InvalidEncoding, InvalidParams, InvalidPath, NotPolynomial
from .qt import QTPoly, QTRational

VALLEY = "valley"
RISE = "rise"
PLAIN = "none"

LSQ = "lsq"
LD = "ld"
LSQPRIME = "lsqprime"

FAMILIES = (LSQ, LD, LSQPRIME)


@dataclass(frozen=True)
class DecoratedPath:
    """A square path with partial labelling and decoration set."""

    area_word: tuple
    labels: tuple
    kind: str = PLAIN
    decorations: frozenset = field(default_factory=frozenset)

    @property
    def size(self):
        return len(self.area_word)

    @property
    def valley_set(self):
        return self.decorations if self.kind == VALLEY else frozenset()

    @property
    def rise_set(self):
        return self.decorations if self.kind == RISE else frozenset()

    def __str__(self):
        return path_to_line(self)


# ---------------------------------------------------------------------------
# geometry
# ---------------------------------------------------------------------------

def is_area_word(word, dyck=False):
    n = len(word)
    if n == 0:
        return True
    if word[0] > 0 or word[-1] < 0:
        return False
    for i in range(1, n):
        if word[i] > word[i - 1] + 1:
            return False
    if dyck and any(a < 0 for a in word):
        return False
    return True


def shift(word):
    """Distance from the main diagonal down to the base diagonal."""
    return -min(word, default=0)


def rises(word):
    """Rows whose vertical step directly follows another vertical step."""
    return frozenset(i for i in range(2, len(word) + 1) if word[i - 1] > word[i - 2])


def contractible_valleys(word, labels):
    """Rows where the preceding east step commutes past the vertical step.

    First-row valleys with a zero label need two preceding east steps,
    hence the a_1 <= -2 case split.
    """
    out = set()
    n = len(word)
    if n and (word[0] < -1 or (word[0] == -1 and labels[0] > 0)):
        out.add(1)
    for i in range(2, n + 1):
        a, b = word[i - 1], word[i - 2]
        if a < b or (a == b and labels[i - 1] > labels[i - 2]):
            out.add(i)
    return frozenset(out)


def word_to_steps(word):
    """Area word -> 0/1 east/north step sequence of the square path."""
    n = len(word)
    steps = []
    x = 0
    for i, a in enumerate(word):
        col = i - a
        steps.extend([0] * (col - x))
        steps.append(1)
        x = col
    steps.extend([0] * (n - x))
    return tuple(steps)


def steps_to_word(steps):
    """Inverse of word_to_steps; raises InvalidPath on malformed input."""
    x = y = 0
    word = []
    for s in steps:
        if s:
            word.append(y - x)
            y += 1
        else:
            x += 1
    n = len(word)
    if x != n or len(steps) != 2 * n or (steps and steps[-1] != 0):
        raise InvalidPath("not a square path ending east")
    w = tuple(word)
    if not is_area_word(w):
        raise InvalidPath("step sequence does not satisfy the area word axioms")
    return w


# ---------------------------------------------------------------------------
# validity
# ---------------------------------------------------------------------------

def validate_path(p):
    """Raise InvalidPath unless p satisfies every path/labelling/decoration axiom."""
    word, labels = p.area_word, p.labels
    n = len(word)
    if len(labels) != n:
        raise InvalidPath("labels and area word differ in length")
    if n == 0:
        if p.decorations:
            raise InvalidPath("the empty path carries no decorations")
        return
    if not is_area_word(word):
        raise InvalidPath(f"invalid area word {word}")
    if any(w < 0 for w in labels):
        raise InvalidPath("labels must be non-negative")
    if word[0] == 0 and labels[0] == 0:
        raise InvalidPath("a path starting north cannot have label 0 in row 1")
    for i in range(1, n):
        if word[i] > word[i - 1] and labels[i] <= labels[i - 1]:
            raise InvalidPath(f"labels must increase along the column at row {i + 1}")
    s = shift(word)
    if not any(word[i] == -s and labels[i] > 0 for i in range(n)):
        raise InvalidPath("no positive label on the base diagonal")
    if p.kind not in (VALLEY, RISE, PLAIN):
        raise InvalidPath(f"unknown decoration kind {p.kind!r}")
    if p.kind == PLAIN and p.decorations:
        raise InvalidPath("undecorated paths carry an empty decoration set")
    if p.kind == VALLEY:
        legal = contractible_valleys(word, labels)
        if not set(p.decorations) <= legal:
            raise InvalidPath(f"decorated valleys {sorted(p.decorations)} not contractible")
    if p.kind == RISE:
        if not set(p.decorations) <= rises(word):
            raise InvalidPath(f"decorated rises {sorted(p.decorations)} are not rises")


# ---------------------------------------------------------------------------
# statistics
# ---------------------------------------------------------------------------

def area(p):
    """Sum of a_i + shift over rows not carrying a decorated rise."""
    s = shift(p.area_word)
    dr = p.rise_set
    return sum(a + s for i, a in enumerate(p.area_word, start=1) if i not in dr)


def dinv(p):
    """Primary + secondary inversions whose left end is undecorated,
    plus one for each positive label below the main diagonal,
    minus the number of decorated valleys."""
    word, labels = p.area_word, p.labels
    dv = p.valley_set
    n = len(word)
    total = 0
    for i in range(n):
        if word[i] < 0 and labels[i] > 0:
            total += 1
        if (i + 1) in dv:
            total -= 1
            continue
        ai, wi = word[i], labels[i]
        for j in range(i + 1, n):
            if word[j] == ai and wi < labels[j]:
                total += 1
            elif word[j] == ai - 1 and wi > labels[j]:
                total += 1
    return total


def touching_count(p):
    """Undecorated positive labels on the base diagonal."""
    s = shift(p.area_word)
    dv = p.valley_set
    return sum(
        1
        for i in range(p.size)
        if p.area_word[i] == -s and p.labels[i] > 0 and (i + 1) not in dv
    )


def zeros_count(p):
    return sum(1 for w in p.labels if w == 0)


def content_partition(labels):
    """Multiplicities of the positive labels, sorted decreasingly."""
    counts = {}
    for w in labels:
        if w > 0:
            counts[w] = counts.get(w, 0) + 1
    return tuple(sorted(counts.values(), reverse=True))


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def area_words(size, dyck=False):
    """All area words of the given size, lexicographically ascending."""
    if size == 0:
        yield ()
        return
    lo0 = 0 if dyck else 1 - size

    def rec(prefix):
        i = len(prefix)
        if i == size:
            yield tuple(prefix)
            return
        lo = max(i + 1 - size, 0 if dyck else -size)
        hi = prefix[-1] + 1 if prefix else 0
        for a in range(lo, hi + 1):
            prefix.append(a)
            yield from rec(prefix)
            prefix.pop()

    for a1 in range(lo0, 1):
        yield from rec([a1])


def labellings(word, m, n, alphabet_max):
    """All labellings of an area word with m zeros and n positive labels
    drawn from {1, ..., alphabet_max}, lexicographically ascending."""
    size = len(word)
    if size != m + n:
        return
    if size == 0:
        yield ()
        return
    rise_rows = rises(word)
    s = shift(word)
    base_rows = [i for i in range(size) if word[i] == -s]

    def rec(prefix, zeros, pos):
        i = len(prefix)
        if i == size:
            if zeros == m:
                yield tuple(prefix)
            return
        if m - zeros > size - i:
            return
        lo = 0
        if (i + 1) in rise_rows:
            lo = prefix[-1] + 1
        elif i == 0 and word[0] == 0:
            lo = 1
        for w in range(lo, alphabet_max + 1):
            if w == 0:
                if zeros == m:
                    continue
                prefix.append(0)
                yield from rec(prefix, zeros + 1, pos)
                prefix.pop()
            else:
                if pos == n:
                    break
                prefix.append(w)
                yield from rec(prefix, zeros, pos + 1)
                prefix.pop()

    for lab in rec([], 0, 0):
        if any(lab[i] > 0 for i in base_rows):
            yield lab


def enumerate_paths(family, m, n, k=0, kind=VALLEY, touching=None, alphabet_max=None):
    """Exhaustively yield each member of the requested family exactly once.

    family: 'lsq', 'ld' or 'lsqprime'; m zeros, n positive labels, k
    decorations of the given kind; `touching` restricts to paths with
    exactly r undecorated positive labels on the base diagonal.
    """
    if family not in FAMILIES:
        raise InvalidParams(f"unknown family {family!r}")
    if kind not in (VALLEY, RISE):
        raise InvalidParams(f"unknown decoration kind {kind!r}")
    if m < 0 or n < 0 or k < 0:
        raise InvalidParams("m, n, k must be non-negative")
    if family == LSQPRIME and kind == RISE:
        raise InvalidParams("LSQ' is specific to valley decorations")
    if touching is not None and kind == RISE:
        raise InvalidParams("touching refinement is specific to valley decorations")
    if alphabet_max is None:
        alphabet_max = n
    size = m + n
    if size == 0:
        if k == 0 and (touching is None or touching == 0):
            yield DecoratedPath((), (), kind, frozenset())
        return
    dyck = family == LD
    for word in area_words(size, dyck=dyck):
        s = shift(word)
        base_positive = None
        for lab in labellings(word, m, n, alphabet_max):
            if kind == VALLEY:
                sites = sorted(contractible_valleys(word, lab))
            else:
                sites = sorted(rises(word))
            if len(sites) < k:
                continue
            if kind == VALLEY:
                base_positive = [
                    i + 1 for i in range(size) if word[i] == -s and lab[i] > 0
                ]
            for dec in combinations(sites, k):
                if kind == VALLEY:
                    r = sum(1 for i in base_positive if i not in dec)
                    if family == LSQPRIME and r == 0:
                        continue
                    if touching is not None and r != touching:
                        continue
                yield DecoratedPath(word, lab, kind, frozenset(dec))


# ---------------------------------------------------------------------------
# generating polynomials
# ---------------------------------------------------------------------------

class GenPoly:
    """Map from positive-label content partition to a q,t-polynomial.

    The comparison currency between path enumeration and symmetric
    functions rendered in the monomial basis.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {c: p for c, p in (terms or {}).items() if not p.is_zero}

    def __eq__(self, other):
        if not isinstance(other, GenPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    @property
    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        out = dict(self.terms)
        for c, p in other.terms.items():
            s = out.get(c, QTPoly.zero()) + p
            if s.is_zero:
                out.pop(c, None)
            else:
                out[c] = s
        return GenPoly(out)

    def scale_poly(self, p):
        return GenPoly({c: v * p for c, v in self.terms.items()})

    def scale_certified(self, ratio):
        """Multiply by a QTRational, certifying every coefficient stays polynomial."""
        out = {}
        for c, v in self.terms.items():
            out[c] = (QTRational(v) * ratio).to_poly()
        return GenPoly(out)

    def first_difference(self, other):
        """(content, qexp, texp, self_coeff, other_coeff) of the first mismatch."""
        for c in sorted(set(self.terms) | set(other.terms)):
            a = self.terms.get(c, QTPoly.zero())
            b = other.terms.get(c, QTPoly.zero())
            if a == b:
                continue
            for m in sorted(set(a.terms) | set(b.terms)):
                ca, cb = a.terms.get(m, 0), b.terms.get(m, 0)
                if ca != cb:
                    return c, m[0], m[1], ca, cb
        return None

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for c in sorted(self.terms):
            parts.append(f"[{','.join(map(str, c))}]: {self.terms[c]}")
        return "; ".join(parts)

    def to_json(self):
        records = []
        for c in sorted(self.terms):
            poly = self.terms[c]
            for (qe, te) in sorted(poly.terms):
                records.append(
                    {"content": list(c), "q": qe, "t": te, "coeff": str(poly.terms[(qe, te)])}
                )
        return json.dumps({"terms": records})

    @staticmethod
    def from_json(text):
        data = json.loads(text)
        terms = {}
        for rec in data["terms"]:
            c = tuple(rec["content"])
            poly = terms.setdefault(c, {})
            from fractions import Fraction

            poly[(rec["q"], rec["t"])] = Fraction(rec["coeff"])
        return GenPoly({c: QTPoly(d) for c, d in terms.items()})


def generating_polynomial(paths, check_symmetry=False):
    """Sum q^dinv t^area x^w over the given paths, keyed by sorted content.

    With check_symmetry=True the aggregation is done per raw content
    vector first and the map must factor through sorting, which verifies
    that the family's series really is a symmetric polynomial.
    """
    by_vector = {}
    by_content = {}
    for p in paths:
        key_q, key_t = dinv(p), area(p)
        if key_q < 0:
            raise InvalidPath(f"negative dinv for {p}")
        content = content_partition(p.labels)
        acc = by_content.setdefault(content, {})
        acc[(key_q, key_t)] = acc.get((key_q, key_t), 0) + 1
        if check_symmetry:
            counts = {}
            for w in p.labels:
                if w > 0:
                    counts[w] = counts.get(w, 0) + 1
            vec = tuple(sorted(counts.items()))
            accv = by_vector.setdefault(vec, {})
            accv[(key_q, key_t)] = accv.get((key_q, key_t), 0) + 1
    if check_symmetry:
        folded = {}
        for vec, acc in by_vector.items():
            content = tuple(sorted((mult for _, mult in vec), reverse=True))
            prev = folded.setdefault(content, acc)
            if prev is not acc and prev != acc:
                raise InvalidPath(f"content vector {vec} breaks x-symmetry")
    return GenPoly({c: QTPoly(d) for c, d in by_content.items()})


def family_genpoly(family, m, n, k=0, kind=VALLEY, touching=None, alphabet_max=None,
                   check_symmetry=False):
    return generating_polynomial(
        enumerate_paths(family, m, n, k, kind, touching, alphabet_max),
        check_symmetry=check_symmetry,
    )


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def path_to_line(p):
    word = "[" + ",".join(map(str, p.area_word)) + "]"
    labels = "[" + ",".join(map(str, p.labels)) + "]"
    dec = "[" + ",".join(map(str, sorted(p.decorations))) + "]"
    return f"areaword={word}; labels={labels}; kind={p.kind}; dec={dec}"


def path_from_line(line):
    fields = {}
    for chunk in line.strip().split(";"):
        key, _, value = chunk.strip().partition("=")
        fields[key.strip()] = value.strip()
    def ints(s):
        s = s.strip()[1:-1].strip()
        return tuple(int(x) for x in s.split(",")) if s else ()
    p = DecoratedPath(
        ints(fields["areaword"]),
        ints(fields["labels"]),
        fields.get("kind", PLAIN),
        frozenset(ints(fields.get("dec", "[]"))),
    )
    validate_path(p)
    return p


# ---------------------------------------------------------------------------
# the infinity form and zero pushing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InfinityPath:
    """Alternative encoding: zero labels appear as infinity labels (None)
    one diagonal higher, before the pushing move."""

    area_word: tuple
    labels: tuple  # int or None; None means an infinity label
    decorations: frozenset = field(default_factory=frozenset)

    @property
    def size(self):
        return len(self.area_word)


def _inf_key(w):
    # sort key under which None (infinity) beats every finite label
    return (1, 0) if w is None else (0, w)


def push_zeros(ip):
    """Push every infinity step one diagonal down, turning it into a zero.

    Preserves dinv; decreases area by the number of infinity labels.
    Raises InvalidEncoding when the input is not a valid infinity form.
    """
    word, labels = ip.area_word, ip.labels
    n = len(word)
    if n == 0:
        return DecoratedPath((), (), VALLEY, frozenset())
    if not is_area_word(word):
        raise InvalidEncoding(f"invalid area word {word}")
    s = shift(word)
    inf_rows = [i for i in range(n) if labels[i] is None]
    if any(word[i] == -s for i in inf_rows):
        raise InvalidEncoding("infinity labels may not sit on the base diagonal")
    # labelling axioms in the infinity order (None largest)
    for i in range(1, n):
        if word[i] > word[i - 1] and _inf_key(labels[i]) <= _inf_key(labels[i - 1]):
            raise InvalidEncoding("labels must increase along columns")
    if word[0] == 0 and labels[0] == 0:
        raise InvalidEncoding("row 1 on the main diagonal cannot carry 0")
    new_word = tuple(a - 1 if labels[i] is None else a for i, a in enumerate(word))
    new_labels = tuple(0 if w is None else w for w in labels)
    out = DecoratedPath(new_word, new_labels, VALLEY, ip.decorations)
    try:
        validate_path(out)
    except InvalidPath as exc:
        raise InvalidEncoding(str(exc)) from exc
    return out


def to_infinity_form(p):
    """Inverse of push_zeros on valley-decorated (or plain) paths."""
    word = tuple(a + 1 if p.labels[i] == 0 else a for i, a in enumerate(p.area_word))
    labels = tuple(None if w == 0 else w for w in p.labels)
    return InfinityPath(word, labels, p.valley_set)


def infinity_dinv(ip):
    """dinv of an infinity-form path: infinity labels compare above every
    finite label and contribute no bonus below the main diagonal."""
    word, labels = ip.area_word, ip.labels
    dv = ip.decorations
    n = len(word)
    total = 0
    for i in range(n):
        if word[i] < 0 and labels[i] is not None and labels[i] > 0:
            total += 1
        if (i + 1) in dv:
            total -= 1
            continue
        ai, wi = word[i], _inf_key(labels[i])
        for j in range(i + 1, n):
            if word[j] == ai and wi < _inf_key(labels[j]):
                total += 1
            elif word[j] == ai - 1 and wi > _inf_key(labels[j]):
                total += 1
    return total

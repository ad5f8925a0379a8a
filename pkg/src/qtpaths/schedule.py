"""Marked diagonal words, schedule numbers, the closed-form class product,
and the insertion algorithm that rebuilds a class path by path.

A marked word is the diagonal word of a valley-decorated path: runs
rho_ell ... rho_0, one per diagonal (top first), each a sorted multiset
of (label, decorated) entries with c < c-bullet < c+1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from . import paths
from .errors import IndexOutOfRange, InvalidParams, InvalidPath, UnrealizableWord
from .qt import ONE, ZERO, QTPoly, q_binomial
from .util import multiset_permutations, weak_compositions


@dataclass(frozen=True)
class MarkedWord:
    """Runs stored top run first, so runs[-1] is rho_0 on the base diagonal."""

    runs: tuple  # tuple of runs; each run a tuple of (label, decorated)

    def __post_init__(self):
        for run in self.runs:
            if not run:
                raise InvalidParams("empty run in a marked word")
            for label, dec in run:
                if label < 0 or not isinstance(dec, bool):
                    raise InvalidParams(f"bad entry {(label, dec)} in a marked word")
        object.__setattr__(self, "runs", tuple(tuple(sorted(r)) for r in self.runs))

    @property
    def top_index(self):
        """The index ell of the highest run; -1 for the empty word."""
        return len(self.runs) - 1

    def run(self, i):
        """rho_i, counted upward from the base diagonal."""
        ell = self.top_index
        if not 0 <= i <= ell:
            raise IndexOutOfRange(f"run index {i} outside 0..{ell}")
        return self.runs[ell - i]

    @property
    def size(self):
        return sum(len(r) for r in self.runs)

    def entries(self):
        """Concatenation rho_ell ... rho_0."""
        return [e for run in self.runs for e in run]

    def content(self):
        counts = {}
        for run in self.runs:
            for label, _ in run:
                if label > 0:
                    counts[label] = counts.get(label, 0) + 1
        return tuple(sorted(counts.values(), reverse=True))

    def to_text(self):
        chunks = []
        for run in self.runs:
            chunks.append(" ".join(f"{label}*" if dec else str(label) for label, dec in run))
        return " | ".join(chunks)

    @staticmethod
    def from_text(text):
        runs = []
        for chunk in text.split("|"):
            entries = []
            for token in chunk.split():
                if token.endswith("*"):
                    entries.append((int(token[:-1]), True))
                else:
                    entries.append((int(token), False))
            if not entries:
                raise InvalidParams(f"empty run in marked word text {text!r}")
            runs.append(tuple(entries))
        return MarkedWord(tuple(runs))

    def __str__(self):
        return self.to_text()


def maj(word):
    """Major index of the concatenated marked sequence.

    Entries compare by (label, decorated), which realizes c < c-bullet < c+1.
    """
    seq = word.entries() if isinstance(word, MarkedWord) else list(word)
    return sum(i for i in range(1, len(seq)) if seq[i - 1] > seq[i])


def diagonal_word(p):
    """The marked word reading the labels of each diagonal, top diagonal first."""
    word = p.area_word
    n = len(word)
    if n == 0:
        return MarkedWord(())
    s = paths.shift(word)
    ell = max(word) + s
    by_diag = [[] for _ in range(ell + 1)]
    dv = p.valley_set
    for i in range(n):
        by_diag[word[i] + s].append((p.labels[i], (i + 1) in dv))
    if any(not run for run in by_diag):
        raise InvalidPath("a diagonal between base and top is empty")
    return MarkedWord(tuple(tuple(sorted(r)) for r in reversed(by_diag)))


# ---------------------------------------------------------------------------
# run multiplicities and schedule numbers
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RunMultiplicity:
    """Per-label counts of undecorated and decorated entries of one run."""

    undecorated: tuple  # sorted ((label, count), ...)
    decorated: tuple

    def z(self, c):
        return dict(self.undecorated).get(c, 0)

    def z_dec(self, c):
        return dict(self.decorated).get(c, 0)

    @property
    def und_size(self):
        """#rho~_i: undecorated entries."""
        return sum(k for _, k in self.undecorated)

    @property
    def und_pos_size(self):
        """#rho'_i: undecorated positive entries."""
        return sum(k for label, k in self.undecorated if label > 0)


_EMPTY_MULT = RunMultiplicity((), ())


def run_multiplicities(word):
    """RunMultiplicity for each run, indexed from the base diagonal up."""
    out = []
    for i in range(word.top_index + 1):
        und, dec = {}, {}
        for label, d in word.run(i):
            tgt = dec if d else und
            tgt[label] = tgt.get(label, 0) + 1
        out.append(RunMultiplicity(tuple(sorted(und.items())), tuple(sorted(dec.items()))))
    return out


def _count_und(mult, pred):
    return sum(k for label, k in mult.undecorated if pred(label))


def schedule_numbers(word, s, i, c, _mults=None):
    """(w_{i,s}(c), w-bullet_{i,s}(c)) with rho~_{-1} = rho~_{ell+1} = empty."""
    ell = word.top_index
    if not 0 <= i <= ell:
        raise IndexOutOfRange(f"run index {i} outside 0..{ell}")
    if not 0 <= s <= ell:
        raise IndexOutOfRange(f"shift {s} outside 0..{ell}")
    mults = _mults if _mults is not None else run_multiplicities(word)

    def mult_at(j):
        return mults[j] if 0 <= j <= ell else _EMPTY_MULT

    here = mult_at(i)
    below, above = mult_at(i - 1), mult_at(i + 1)
    if i > s:
        w = _count_und(here, lambda d: d > c) + _count_und(below, lambda d: d < c)
    elif i == s:
        w = _count_und(here, lambda d: d > c) + 1 - (1 if c == 0 else 0)
    else:
        w = _count_und(here, lambda d: d < c) + _count_und(above, lambda d: d > c)
    w_dec = _count_und(here, lambda d: d < c) + _count_und(above, lambda d: d > c)
    if c == 0 and i == s - 1:
        w_dec -= 1
    return w, w_dec


def b_exponent(word, s):
    """b(z, s): bonus-dinv exponent carried by the runs below the main diagonal."""
    mults = run_multiplicities(word)
    total = 0
    for i in range(s):
        pos = mults[i].und_pos_size if i < len(mults) else 0
        dec_zero_below = mults[i - 1].z_dec(0) if i - 1 >= 0 and i - 1 < len(mults) else 0
        total += pos - dec_zero_below
    return total


def schedule_product(word, s):
    """The closed-form q,t-polynomial of the class (diagonal word, shift).

    Realizability of (word, s) is a precondition for the class
    interpretation; out-of-range shifts return 0.
    """
    ell = word.top_index
    if ell < 0:
        return ONE if s == 0 else ZERO
    if s < 0 or s > ell:
        return ZERO
    mults = run_multiplicities(word)
    out = QTPoly.monomial(b_exponent(word, s), maj(word))
    for i in range(ell + 1):
        for c, z in mults[i].undecorated:
            w, _ = schedule_numbers(word, s, i, c, _mults=mults)
            out = out * q_binomial(w + z - 1, z)
            if out.is_zero:
                return out
        for c, zd in mults[i].decorated:
            _, w_dec = schedule_numbers(word, s, i, c, _mults=mults)
            out = out * QTPoly.monomial(math.comb(zd, 2), 0) * q_binomial(w_dec, zd)
            if out.is_zero:
                return out
    return out


def schedule_genpoly(word, s):
    poly = schedule_product(word, s)
    if poly.is_zero:
        return paths.GenPoly()
    return paths.GenPoly({word.content(): poly})


# ---------------------------------------------------------------------------
# brute-force class enumeration (independent oracle for the product)
# ---------------------------------------------------------------------------

def enumerate_class(word, s):
    """All decorated paths with the given diagonal word and shift, by direct
    arrangement search; independent of both the product formula and the
    insertion algorithm."""
    ell = word.top_index
    if ell < 0:
        if s == 0:
            yield paths.DecoratedPath((), (), paths.VALLEY, frozenset())
        return
    if s < 0 or s > ell:
        return
    sizes = [len(word.run(i)) for i in range(ell + 1)]
    n = sum(sizes)

    diag_seqs = []

    def rec(seq, remaining):
        i = len(seq)
        if i == n:
            if seq[-1] >= s:
                diag_seqs.append(tuple(seq))
            return
        hi = (seq[-1] + 1) if seq else s
        for d in range(0, min(hi, ell) + 1):
            if remaining[d]:
                remaining[d] -= 1
                seq.append(d)
                rec(seq, remaining)
                seq.pop()
                remaining[d] += 1

    rec([], list(sizes))

    run_perms = [list(multiset_permutations(word.run(i))) for i in range(ell + 1)]

    for seq in diag_seqs:
        rows_by_diag = [[] for _ in range(ell + 1)]
        for row, d in enumerate(seq):
            rows_by_diag[d].append(row)

        def assemble(i, labels, dv):
            if i > ell:
                p = paths.DecoratedPath(
                    tuple(d - s for d in seq), tuple(labels), paths.VALLEY, frozenset(dv)
                )
                try:
                    paths.validate_path(p)
                except InvalidPath:
                    return
                yield p
                return
            for perm in run_perms[i]:
                new_dv = list(dv)
                for row, (label, dec) in zip(rows_by_diag[i], perm):
                    labels[row] = label
                    if dec:
                        new_dv.append(row + 1)
                yield from assemble(i + 1, labels, new_dv)

        yield from assemble(0, [0] * n, [])


# ---------------------------------------------------------------------------
# the insertion algorithm
# ---------------------------------------------------------------------------

def _chains(rows, positions, counts, new_row):
    """Insert counts[j] copies of new_row before original index positions[j]."""
    marks = {}
    for pos, k in zip(positions, counts):
        marks[pos] = marks.get(pos, 0) + k
    out = []
    for idx in range(len(rows) + 1):
        out.extend([new_row] * marks.get(idx, 0))
        if idx < len(rows):
            out.append(rows[idx])
    return out


def _rows_ok(rows, s):
    """Validity of a partial row list, except the base-diagonal witness
    (a positive base label may still arrive with a later decoration)."""
    word = tuple(d - s for d, _, _ in rows)
    labels = tuple(label for _, label, _ in rows)
    if not paths.is_area_word(word):
        return False
    if word[0] == 0 and labels[0] == 0:
        return False
    for i in range(1, len(rows)):
        if word[i] > word[i - 1] and labels[i] <= labels[i - 1]:
            return False
    dv = frozenset(i + 1 for i, (_, _, dec) in enumerate(rows) if dec)
    return dv <= paths.contractible_valleys(word, labels)


def insertion_generate(word, s):
    """Rebuild every path of the class (word, s) by the four-phase insertion:
    the main-diagonal run, the runs above, the runs below, then decorated
    valleys through choices of subsets T of the dinv-attacking steps."""
    ell = word.top_index
    if ell < 0:
        if s != 0:
            raise UnrealizableWord("the empty word is only realizable at shift 0")
        yield paths.DecoratedPath((), (), paths.VALLEY, frozenset())
        return
    if s < 0 or s > ell:
        raise UnrealizableWord(f"shift {s} outside 0..{ell}")
    mults = run_multiplicities(word)

    partials = [[]]

    # phase 1: undecorated labels of the main-diagonal run, biggest first
    for c, z in sorted(mults[s].undecorated, reverse=True):
        new = []
        for rows in partials:
            positions = ([] if c == 0 else [0]) + [r + 1 for r in range(len(rows))]
            for counts in weak_compositions(z, len(positions)):
                new.append(_chains(rows, positions, counts, (s, c, False)))
        partials = new

    # phase 2: runs above the main diagonal, bottom-up, biggest labels first
    for i in range(s + 1, ell + 1):
        for c, z in sorted(mults[i].undecorated, reverse=True):
            new = []
            for rows in partials:
                positions = [
                    r + 1
                    for r, (d, label, _) in enumerate(rows)
                    if (d == i and label > c) or (d == i - 1 and label < c)
                ]
                for counts in weak_compositions(z, len(positions)):
                    new.append(_chains(rows, positions, counts, (i, c, False)))
            partials = new

    # phase 3: runs below the main diagonal, top-down, smallest labels first
    for i in range(s - 1, -1, -1):
        for c, z in sorted(mults[i].undecorated):
            new = []
            for rows in partials:
                positions = [
                    r
                    for r, (d, label, _) in enumerate(rows)
                    if (d == i + 1 and label > c) or (d == i and label < c)
                ]
                for counts in weak_compositions(z, len(positions)):
                    new.append(_chains(rows, positions, counts, (i, c, False)))
            partials = new

    if any(z for m_ in mults for _, z in m_.undecorated) and not partials:
        raise UnrealizableWord(f"no undecorated skeleton for {word} at shift {s}")

    # phase 4: decorated valleys, one (diagonal, label) group at a time
    for i in range(ell + 1):
        for c, zd in mults[i].decorated:
            new = []
            for rows in partials:
                s_rows = [
                    r
                    for r, (d, label, dec) in enumerate(rows)
                    if not dec and ((d == i + 1 and label > c) or (d == i and label < c))
                ]
                ground = s_rows[1:] if (i == s - 1 and c == 0) else s_rows
                for chosen in combinations(ground, zd):
                    work = list(rows)
                    ok = True
                    for t in sorted(chosen, reverse=True):
                        pos_in_s = s_rows.index(t)
                        if i >= s:
                            lo = t + 1
                            hi = s_rows[pos_in_s + 1] if pos_in_s + 1 < len(s_rows) else len(work)
                        else:
                            prev = s_rows[pos_in_s - 1] if pos_in_s > 0 else None
                            lo = prev + 1 if prev is not None else 0
                            hi = t
                        slots = [
                            p
                            for p in range(lo, hi + 1)
                            if _rows_ok(work[:p] + [(i, c, True)] + work[p:], s)
                        ]
                        if len(slots) != 1:
                            ok = False
                            break
                        work.insert(slots[0], (i, c, True))
                    if ok:
                        new.append(work)
            partials = new

    if not partials:
        raise UnrealizableWord(f"{word} is not realizable at shift {s}")

    seen = set()
    for rows in partials:
        p = paths.DecoratedPath(
            tuple(d - s for d, _, _ in rows),
            tuple(label for _, label, _ in rows),
            paths.VALLEY,
            frozenset(r + 1 for r, (_, _, dec) in enumerate(rows) if dec),
        )
        try:
            paths.validate_path(p)
        except InvalidPath as exc:
            raise UnrealizableWord(
                f"insertion produced an invalid path for {word} at shift {s}: {exc}"
            ) from exc
        if diagonal_word(p) != word or paths.shift(p.area_word) != s:
            raise UnrealizableWord(
                f"insertion drifted off the class for {word} at shift {s}"
            )
        key = (p.area_word, p.labels, p.decorations)
        if key in seen:
            raise UnrealizableWord(f"insertion produced a duplicate for {word} at shift {s}")
        seen.add(key)
        yield p

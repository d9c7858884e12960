"""Generator words for SL_n(Z) and its level-2 congruence subgroup.

Letters
-------
E(i,j)   elementary matrix, identity plus 1 in position (i, j), i != j
J(i)     diagonal sign flip at positions i and i+1 (needs 1 <= i < n)
JR(i,k)  diagonal sign flip at positions i and k; expands to the product
         J(min) J(min+1) .. J(max-1) of consecutive flips
TAU      quarter turn in the first two coordinates
P(sigma) permutation matrix of an even permutation
NEG      minus the identity; only a generator in dimension 2

All indices are 1-based. A word is a sequence of (letter, exponent) pairs
and evaluates left to right. Words tagged as congruence words use only
E letters with even exponents, J/JR letters, and NEG (n = 2): these
generate the level-2 congruence subgroup.

The conjugation rewrite tables below (pushing an elementary letter across
a congruence generator) are not taken on faith: every case is re-verified
by exact multiplication on each call, and a bounded breadth-first search
stands by to repair any case that fails. `rewrite_table_audit` reports the
verification status of all sixteen case families.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .intmat import IntMatrix, elementary_matrix, tau_matrix
from .permutation import Permutation
from .subgroups import NotInGroupError, in_congruence

WORD_LETTER_CAP = 10**6


class WordLengthError(RuntimeError):
    """Raised when a decomposition would exceed the letter cap."""


@dataclass(frozen=True)
class GeneratorSymbol:
    """One alphabet letter; see the module docstring for the kinds."""

    kind: str
    i: int = 0
    j: int = 0
    sigma: Optional[Permutation] = None

    def __post_init__(self):
        if self.kind not in ("E", "J", "JR", "TAU", "P", "NEG"):
            raise ValueError(f"unknown symbol kind {self.kind!r}")
        if self.kind == "E" and (self.i < 1 or self.j < 1 or self.i == self.j):
            raise ValueError(f"bad elementary indices ({self.i},{self.j})")
        if self.kind == "J" and self.i < 1:
            raise ValueError("J index must be >= 1")
        if self.kind == "JR" and (self.i < 1 or self.j < 1 or self.i == self.j):
            raise ValueError(f"bad sign-pair indices ({self.i},{self.j})")
        if self.kind == "P" and (self.sigma is None or not self.sigma.is_even):
            raise ValueError("P requires an even permutation")

    def token(self, exponent: int = 1) -> str:
        if self.kind == "E":
            base = f"E({self.i},{self.j})"
        elif self.kind == "J":
            base = f"J({self.i})"
        elif self.kind == "JR":
            base = f"JR({self.i},{self.j})"
        elif self.kind == "TAU":
            base = "TAU"
        elif self.kind == "NEG":
            base = "NEG"
        else:
            cycs = self.sigma.cycles()
            body = "".join("(" + ",".join(str(x) for x in c) + ")" for c in cycs)
            base = f"P[{body}]"
        return base if exponent == 1 else f"{base}^{exponent}"


def E(i: int, j: int) -> GeneratorSymbol:
    return GeneratorSymbol("E", i, j)


def J(i: int) -> GeneratorSymbol:
    return GeneratorSymbol("J", i)


def JR(i: int, k: int) -> GeneratorSymbol:
    return GeneratorSymbol("JR", i, k)


TAU = GeneratorSymbol("TAU")
NEG = GeneratorSymbol("NEG")


def P(sigma: Permutation) -> GeneratorSymbol:
    if not sigma.is_even:
        raise ValueError("P letters carry even permutations only")
    return GeneratorSymbol("P", sigma=sigma)


Letter = tuple[GeneratorSymbol, int]


def symbol_matrix(sym: GeneratorSymbol, n: int) -> IntMatrix:
    """Exact matrix of a letter in dimension n; validates index ranges."""
    if sym.kind == "E":
        if sym.i > n or sym.j > n:
            raise ValueError(f"E({sym.i},{sym.j}) does not fit in dimension {n}")
        return elementary_matrix(n, sym.i, sym.j)
    if sym.kind == "J":
        if not 1 <= sym.i < n:
            raise ValueError(f"J({sym.i}) needs 1 <= i < n, n={n}")
        diag = [1] * n
        diag[sym.i - 1] = -1
        diag[sym.i] = -1
        return IntMatrix.diagonal(diag)
    if sym.kind == "JR":
        if sym.i > n or sym.j > n:
            raise ValueError(f"JR({sym.i},{sym.j}) does not fit in dimension {n}")
        diag = [1] * n
        diag[sym.i - 1] = -1
        diag[sym.j - 1] = -1
        return IntMatrix.diagonal(diag)
    if sym.kind == "TAU":
        return tau_matrix(n)
    if sym.kind == "NEG":
        if n != 2:
            raise ValueError("NEG is a generator only in dimension 2")
        return IntMatrix.diagonal([-1, -1])
    # P
    if sym.sigma.n != n:
        raise ValueError(f"permutation acts on {sym.sigma.n} points, not {n}")
    if not sym.sigma.is_even:
        raise ValueError("P letters carry even permutations only")
    return sym.sigma.matrix()


@dataclass(frozen=True)
class GeneratorWord:
    """A word in dimension n; letters evaluate left to right."""

    n: int
    letters: tuple[Letter, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be at least 1")
        for sym, exp in self.letters:
            if not isinstance(sym, GeneratorSymbol) or exp == 0:
                raise ValueError("letters must be (symbol, nonzero exponent) pairs")

    def __len__(self) -> int:
        return len(self.letters)

    def matrix(self) -> IntMatrix:
        out = IntMatrix.identity(self.n)
        for sym, exp in self.letters:
            out = out * (symbol_matrix(sym, self.n) ** exp)
        return out

    def inverse(self) -> "GeneratorWord":
        return GeneratorWord(
            self.n, tuple((sym, -exp) for sym, exp in reversed(self.letters))
        )

    def __str__(self) -> str:
        if not self.letters:
            return "<empty>"
        return " ".join(sym.token(exp) for sym, exp in self.letters)


def word_to_matrix(word: GeneratorWord) -> IntMatrix:
    return word.matrix()


def is_congruence_word(word: GeneratorWord) -> bool:
    """Letters restricted to E^even, J, JR, and NEG (dimension 2 only)."""
    for sym, exp in word.letters:
        if sym.kind == "E":
            if exp % 2:
                return False
        elif sym.kind in ("J", "JR"):
            continue
        elif sym.kind == "NEG":
            if word.n != 2:
                return False
        else:
            return False
    return True


class _Builder:
    """Accumulates letters, merging adjacent same-symbol runs and dropping zeros."""

    def __init__(self, n: int, cap: int = WORD_LETTER_CAP):
        self.n = n
        self.cap = cap
        self.letters: list[Letter] = []

    def push(self, sym: GeneratorSymbol, exp: int) -> None:
        if exp == 0:
            return
        if self.letters and self.letters[-1][0] == sym:
            merged = self.letters[-1][1] + exp
            if merged == 0:
                self.letters.pop()
            else:
                self.letters[-1] = (sym, merged)
        else:
            self.letters.append((sym, exp))
            if len(self.letters) > self.cap:
                raise WordLengthError(f"word exceeded {self.cap} letters")

    def extend(self, letters: Iterable[Letter]) -> None:
        for sym, exp in letters:
            self.push(sym, exp)

    def word(self) -> GeneratorWord:
        return GeneratorWord(self.n, tuple(self.letters))


def jrange_expand(i: int, k: int, n: int) -> GeneratorWord:
    """The sign flip at positions {i, k} as a product of consecutive flips.

    With lo = min(i, k) and hi = max(i, k), the product
    J(lo) J(lo+1) .. J(hi-1) telescopes: interior signs cancel in pairs,
    leaving -1 exactly at positions lo and hi.
    """
    if i == k:
        raise ValueError("sign pair needs two distinct positions")
    if not (1 <= i <= n and 1 <= k <= n):
        raise ValueError(f"positions ({i},{k}) out of range for n={n}")
    lo, hi = min(i, k), max(i, k)
    word = GeneratorWord(n, tuple((J(r), 1) for r in range(lo, hi)))
    expected = IntMatrix.diagonal([-1 if r + 1 in (i, k) else 1 for r in range(n)])
    if word.matrix() != expected:
        raise AssertionError("sign-pair expansion failed exact verification")
    return word


# ---------------------------------------------------------------------------
# conjugation rewrite tables
# ---------------------------------------------------------------------------

def _table_e_conj_e2(i: int, j: int, sign: int, k: int, l: int) -> list[Letter]:
    """Word for E(i,j)^sign * E(k,l)^2 * E(i,j)^-sign from the case tables."""
    if sign == 1:
        if j != k and i != l:
            return [(E(k, l), 2)]
        if j != k and i == l:
            return [(E(k, l), 2), (E(k, j), -2)]
        if j == k and i != l:
            return [(E(i, l), 2), (E(k, l), 2)]
        return [(E(i, k), 2), (E(k, i), -2), (JR(i, k), 1)]
    if j != k and i != l:
        return [(E(k, l), 2)]
    if j != k and i == l:
        return [(E(k, l), 2), (E(k, j), 2)]
    if j == k and i != l:
        return [(E(i, l), -2), (E(k, l), 2)]
    return [(JR(k, i), 1), (E(k, i), -2), (E(i, k), 2)]


def _table_e_conj_j(i: int, j: int, sign: int, k: int) -> list[Letter]:
    """Word for E(i,j)^sign * J(k) * E(i,j)^-sign from the case tables."""
    block = (k, k + 1)
    i_in, j_in = i in block, j in block
    if i_in == j_in:
        return [(J(k), 1)]
    if sign == 1:
        if i_in:
            return [(J(k), 1), (E(i, j), -2)]
        return [(E(i, j), 2), (J(k), 1)]
    if i_in:
        return [(E(i, j), -2), (J(k), 1)]
    return [(J(k), 1), (E(i, j), 2)]


def _expand_jr(letters: Sequence[Letter], n: int) -> list[Letter]:
    out: list[Letter] = []
    for sym, exp in letters:
        if sym.kind == "JR":
            expansion = jrange_expand(sym.i, sym.j, n).letters
            for _ in range(abs(exp)):
                out.extend(expansion)  # the sign pair is an involution
        else:
            out.append((sym, exp))
    return out


def search_congruence_word(target: IntMatrix, max_letters: int = 3) -> Optional[GeneratorWord]:
    """Breadth-first search for a short congruence word evaluating to target.

    Alphabet: E(p,q)^{+-2} for all p != q and J(r) for 1 <= r < n. Used as
    the repair path when a rewrite-table case fails verification, and small
    enough to be exhaustive for the short identities involved.
    """
    n = target.n
    alphabet: list[tuple[Letter, IntMatrix]] = []
    for p in range(1, n + 1):
        for q in range(1, n + 1):
            if p == q:
                continue
            for e in (2, -2):
                alphabet.append(((E(p, q), e), symbol_matrix(E(p, q), n) ** e))
    for r in range(1, n):
        alphabet.append(((J(r), 1), symbol_matrix(J(r), n)))
    ident = IntMatrix.identity(n)
    if target == ident:
        return GeneratorWord(n, ())
    frontier: list[tuple[IntMatrix, tuple[Letter, ...]]] = [(ident, ())]
    seen = {ident}
    for _ in range(max_letters):
        nxt = []
        for mat, letters in frontier:
            for letter, lmat in alphabet:
                prod = mat * lmat
                if prod == target:
                    return GeneratorWord(n, letters + (letter,))
                if prod not in seen:
                    seen.add(prod)
                    nxt.append((prod, letters + (letter,)))
        frontier = nxt
    return None


def _conjugate_rewrite_checked(
    e_letter: Letter, g_letter: Letter, n: int
) -> tuple[GeneratorWord, bool]:
    """Rewrite word plus a flag telling whether the table entry needed repair."""
    (esym, eexp) = e_letter
    (gsym, gexp) = g_letter
    if esym.kind != "E" or eexp not in (1, -1):
        raise ValueError("conjugator must be an elementary letter with exponent +-1")
    if gsym.kind == "E" and gexp == 2:
        raw = _table_e_conj_e2(esym.i, esym.j, eexp, gsym.i, gsym.j)
    elif gsym.kind == "J" and gexp == 1:
        raw = _table_e_conj_j(esym.i, esym.j, eexp, gsym.i)
    else:
        raise ValueError("generator must be E(k,l)^2 or J(k)")
    letters = _expand_jr(raw, n)
    word = GeneratorWord(n, tuple(letters))
    emat = symbol_matrix(esym, n) ** eexp
    gmat = symbol_matrix(gsym, n) ** gexp
    target = emat * gmat * emat.inverse_unimodular()
    if word.matrix() == target:
        return word, False
    repaired = search_congruence_word(target)
    if repaired is None:
        raise AssertionError(
            f"no short congruence word found for {esym.token(eexp)} "
            f"conj {gsym.token(gexp)}"
        )
    return repaired, True


def conjugate_rewrite(e_letter: Letter, g_letter: Letter, n: int) -> GeneratorWord:
    """Congruence word equal to e * g * e^-1.

    `e_letter` is an elementary letter with exponent +-1 and `g_letter` is a
    congruence generator, either (E(k,l), 2) or (J(k), 1). The returned word
    is verified by exact multiplication before being returned.
    """
    word, _ = _conjugate_rewrite_checked(e_letter, g_letter, n)
    return word


_CASE_FAMILIES = (
    ("E.E2.E-1", 1, "E", "j!=k, i!=l"),
    ("E.E2.E-1", 1, "E", "j!=k, i==l"),
    ("E.E2.E-1", 1, "E", "j==k, i!=l"),
    ("E.E2.E-1", 1, "E", "j==k, i==l"),
    ("E-1.E2.E", -1, "E", "j!=k, i!=l"),
    ("E-1.E2.E", -1, "E", "j!=k, i==l"),
    ("E-1.E2.E", -1, "E", "j==k, i!=l"),
    ("E-1.E2.E", -1, "E", "j==k, i==l"),
    ("E.J.E-1", 1, "J", "i,j outside block"),
    ("E.J.E-1", 1, "J", "i inside, j outside"),
    ("E.J.E-1", 1, "J", "i outside, j inside"),
    ("E.J.E-1", 1, "J", "i,j inside block"),
    ("E-1.J.E", -1, "J", "i,j outside block"),
    ("E-1.J.E", -1, "J", "i inside, j outside"),
    ("E-1.J.E", -1, "J", "i outside, j inside"),
    ("E-1.J.E", -1, "J", "i,j inside block"),
)


def _e_case_index(i: int, j: int, k: int, l: int) -> int:
    if j != k and i != l:
        return 0
    if j != k and i == l:
        return 1
    if j == k and i != l:
        return 2
    return 3


def _j_case_index(i: int, j: int, k: int) -> int:
    block = (k, k + 1)
    i_in, j_in = i in block, j in block
    if not i_in and not j_in:
        return 0
    if i_in and not j_in:
        return 1
    if not i_in and j_in:
        return 2
    return 3


@dataclass(frozen=True)
class RewriteCaseReport:
    family: str
    sign: int
    generator_kind: str
    condition: str
    instances: int
    corrected: tuple[str, ...]

    @property
    def status(self) -> str:
        if not self.corrected:
            return "VERIFIED"
        return "CORRECTED(" + "; ".join(self.corrected) + ")"


def rewrite_table_audit(n: int) -> list[RewriteCaseReport]:
    """Verify all sixteen rewrite case families exhaustively in dimension n.

    The elementary-on-elementary families are all populated from n = 3 on;
    the sign-flip family with both indices outside the block first appears
    at n = 4 (its report simply counts zero instances below that).
    """
    if n < 3:
        raise ValueError("the audit needs n >= 3 to populate the case families")
    counts = [0] * 16
    corrected: list[list[str]] = [[] for _ in range(16)]
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
    for sign_pos, sign in ((0, 1), (4, -1)):
        for (i, j) in pairs:
            for (k, l) in pairs:
                case = sign_pos + _e_case_index(i, j, k, l)
                word, repaired = _conjugate_rewrite_checked(
                    (E(i, j), sign), (E(k, l), 2), n
                )
                counts[case] += 1
                if repaired:
                    corrected[case].append(f"E({i},{j})^{sign} on E({k},{l})^2 -> {word}")
    for sign_pos, sign in ((8, 1), (12, -1)):
        for (i, j) in pairs:
            for k in range(1, n):
                case = sign_pos + _j_case_index(i, j, k)
                word, repaired = _conjugate_rewrite_checked(
                    (E(i, j), sign), (J(k), 1), n
                )
                counts[case] += 1
                if repaired:
                    corrected[case].append(f"E({i},{j})^{sign} on J({k}) -> {word}")
    reports = []
    for idx, (family, sign, gkind, cond) in enumerate(_CASE_FAMILIES):
        reports.append(
            RewriteCaseReport(
                family=family,
                sign=sign,
                generator_kind=gkind,
                condition=cond,
                instances=counts[idx],
                corrected=tuple(corrected[idx]),
            )
        )
    return reports


# ---------------------------------------------------------------------------
# decompositions
# ---------------------------------------------------------------------------

def _round_div(x: int, m: int) -> int:
    """Nearest-integer quotient of x/m (positive-modulus ties round up)."""
    if m == 0:
        raise ZeroDivisionError("division by zero modulus")
    am = abs(m)
    q = (2 * x + am) // (2 * am)
    return q if m > 0 else -q


def decompose_gamma2(a: IntMatrix) -> GeneratorWord:
    """Write a level-2 congruence matrix of dimension 2 over {E^2, NEG}.

    The descent right-multiplies by even elementary powers, shrinking the
    larger diagonal entry each step (ties prefer the top-left entry). It
    ends in a closed form once a diagonal entry hits +-1 or the matrix
    turns triangular; the determinant guarantees one of the two reductions
    is always available before that.
    """
    if a.n != 2:
        raise ValueError("this decomposition is for 2x2 matrices")
    if not in_congruence(a, 2):
        raise NotInGroupError("matrix is not in the level-2 congruence subgroup")
    m = [list(a.rows[0]), list(a.rows[1])]
    ops: list[Letter] = []

    def col_add(dst: int, src: int, t: int) -> None:
        m[0][dst] += t * m[0][src]
        m[1][dst] += t * m[1][src]

    while (
        abs(m[0][0]) != 1
        and abs(m[1][1]) != 1
        and m[0][1] != 0
        and m[1][0] != 0
    ):
        p, b = m[0][0], m[0][1]
        c, d = m[1][0], m[1][1]
        can_a = abs(b) < abs(p)
        can_d = abs(c) < abs(d)
        use_a = can_a if abs(p) >= abs(d) else not can_d
        if use_a:
            t = -_round_div(p, 2 * b)
            col_add(0, 1, 2 * t)
            ops.append((E(2, 1), 2 * t))
        else:
            t = -_round_div(d, 2 * c)
            col_add(1, 0, 2 * t)
            ops.append((E(1, 2), 2 * t))

    builder = _Builder(2)
    builder.extend(_gamma2_terminal(m))
    for sym, exp in reversed(ops):
        builder.push(sym, -exp)
    word = builder.word()
    if word.matrix() != a:
        raise AssertionError("dimension-2 decomposition failed re-multiplication")
    return word


def _gamma2_terminal(m: list[list[int]]) -> list[Letter]:
    a, b = m[0]
    c, d = m[1]
    if b == 0 and c == 0:
        return [] if a == 1 else [(NEG, 1)]
    if c == 0:
        if a == 1:
            return [(E(1, 2), b)] if b else []
        return [(NEG, 1), (E(1, 2), -b)]
    if b == 0:
        if a == 1:
            return [(E(2, 1), c)] if c else []
        return [(NEG, 1), (E(2, 1), -c)]
    if a == 1:
        return [(E(2, 1), c), (E(1, 2), b)]
    if a == -1:
        return [(NEG, 1)] + _gamma2_terminal([[-a, -b], [-c, -d]])
    if d == 1:
        return [(E(1, 2), b), (E(2, 1), c)]
    if d == -1:
        return [(NEG, 1)] + _gamma2_terminal([[-a, -b], [-c, -d]])
    raise AssertionError("descent stopped in a non-terminal state")


def decompose_gamma_n(a: IntMatrix) -> GeneratorWord:
    """Write a level-2 congruence matrix (n >= 3) over {E^2, J}.

    Row reduction with even multiples only: below the diagonal a two-row
    alternation shrinks |pivot| and |entry| in turns until the entry dies
    (parity makes every centered remainder strict), above the diagonal the
    +-1 pivots clear entries in one step, and a trailing product of sign
    pairs absorbs the -1 diagonal entries.
    """
    if a.n < 3:
        raise ValueError("use decompose_gamma2 for dimension 2")
    if not in_congruence(a, 2):
        raise NotInGroupError("matrix is not in the level-2 congruence subgroup")
    n = a.n
    m = [list(row) for row in a.rows]
    ops: list[tuple[int, int, int]] = []  # (dst_row, src_row, even multiple)

    def row_add(dst: int, src: int, t: int) -> None:
        mdst, msrc = m[dst], m[src]
        for col in range(n):
            mdst[col] += t * msrc[col]
        ops.append((dst, src, t))

    for c in range(n):
        for r in range(c + 1, n):
            while m[r][c] != 0:
                s = -_round_div(m[r][c], 2 * m[c][c])
                if s:
                    row_add(r, c, 2 * s)
                    if m[r][c] == 0:
                        break
                # now |m[r][c]| < |m[c][c]|, so the pivot reduction is strict
                t = -_round_div(m[c][c], 2 * m[r][c])
                row_add(c, r, 2 * t)
    for c in range(1, n):
        pivot = m[c][c]
        for r in range(c):
            e = m[r][c]
            if e:
                row_add(r, c, -e * pivot)  # pivot is +-1 and e is even
    # L_k .. L_1 A = D, so A = inv(L_1) .. inv(L_k) D: invert in forward order
    builder = _Builder(n)
    for dst, src, t in ops:
        builder.push(E(dst + 1, src + 1), -t)
    negs = [i + 1 for i in range(n) if m[i][i] == -1]
    if len(negs) % 2:
        raise AssertionError("odd number of -1 pivots contradicts determinant 1")
    for pos in range(0, len(negs), 2):
        builder.extend(jrange_expand(negs[pos], negs[pos + 1], n).letters)
    word = builder.word()
    # re-multiplication is the contract: fail loudly rather than return junk
    if word.matrix() != a:
        raise AssertionError("congruence decomposition failed re-multiplication")
    return word


def decompose_sln(a: IntMatrix) -> GeneratorWord:
    """Write any determinant-one matrix as a product of elementary letters."""
    if a.det() != 1:
        raise NotInGroupError("matrix must have determinant 1")
    n = a.n
    if n == 1:
        return GeneratorWord(1, ())
    m = [list(row) for row in a.rows]
    ops: list[tuple[int, int, int]] = []

    def row_add(dst: int, src: int, t: int) -> None:
        mdst, msrc = m[dst], m[src]
        for col in range(n):
            mdst[col] += t * msrc[col]
        ops.append((dst, src, t))

    for c in range(n):
        for r in range(c + 1, n):
            while m[r][c] != 0:
                if m[c][c] == 0:
                    row_add(c, r, 1)
                    continue
                q = _round_div(m[r][c], m[c][c])
                if q == 0:
                    q2 = _round_div(m[c][c], m[r][c])
                    row_add(c, r, -q2)
                else:
                    row_add(r, c, -q)
    for c in range(1, n):
        pivot = m[c][c]
        for r in range(c):
            e = m[r][c]
            if e:
                row_add(r, c, -e * pivot)
    builder = _Builder(n)
    for dst, src, t in ops:
        builder.push(E(dst + 1, src + 1), -t)
    negs = [i + 1 for i in range(n) if m[i][i] == -1]
    if len(negs) % 2:
        raise AssertionError("odd number of -1 pivots contradicts determinant 1")
    for pos in range(0, len(negs), 2):
        i, k = negs[pos], negs[pos + 1]
        # a quarter turn in the (i,k) plane, squared, is the sign pair there
        quarter = [(E(k, i), 1), (E(i, k), -1), (E(k, i), 1)]
        builder.extend(quarter + quarter)
    word = builder.word()
    if word.matrix() != a:
        raise AssertionError("elementary decomposition failed re-multiplication")
    return word


# ---------------------------------------------------------------------------
# serialization and sampling
# ---------------------------------------------------------------------------

def word_to_str(word: GeneratorWord) -> str:
    return str(word)


def parse_word(text: str, n: int) -> GeneratorWord:
    """Parse the token format produced by word_to_str."""
    text = text.strip()
    if not text or text == "<empty>":
        return GeneratorWord(n, ())
    letters: list[Letter] = []
    for token in text.split():
        base, _, exp_part = token.partition("^")
        exp = 1
        if exp_part:
            try:
                exp = int(exp_part)
            except ValueError as exc:
                raise ValueError(f"bad exponent in token {token!r}") from exc
        letters.append((_parse_symbol(base, n), exp))
    return GeneratorWord(n, tuple(letters))


def _parse_symbol(base: str, n: int) -> GeneratorSymbol:
    if base == "TAU":
        return TAU
    if base == "NEG":
        return NEG
    if base.startswith("E(") and base.endswith(")"):
        i, j = _parse_index_pair(base[2:-1])
        return E(i, j)
    if base.startswith("JR(") and base.endswith(")"):
        i, j = _parse_index_pair(base[3:-1])
        return JR(i, j)
    if base.startswith("J(") and base.endswith(")"):
        return J(int(base[2:-1]))
    if base.startswith("P[") and base.endswith("]"):
        body = base[2:-1]
        cycles = []
        for chunk in body.split(")"):
            chunk = chunk.strip("(")
            if not chunk:
                continue
            cycles.append(tuple(int(x) for x in chunk.split(",") if x))
        return P(Permutation.from_cycles(n, cycles))
    raise ValueError(f"unrecognized token {base!r}")


def _parse_index_pair(body: str) -> tuple[int, int]:
    parts = body.split(",")
    if len(parts) != 2:
        raise ValueError(f"expected two indices in {body!r}")
    return int(parts[0]), int(parts[1])


def congruence_generators(n: int) -> list[Letter]:
    """Generating letters of the level-2 congruence subgroup in dimension n."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if n == 2:
        return [(E(1, 2), 2), (E(2, 1), 2), (NEG, 1)]
    gens: list[Letter] = [
        (E(i, j), 2) for i in range(1, n + 1) for j in range(1, n + 1) if i != j
    ]
    gens.extend((J(i), 1) for i in range(1, n))
    return gens


def random_congruence_word(
    n: int, rng: random.Random, max_letters: int = 30, min_letters: int = 1
) -> GeneratorWord:
    """Uniform letters from congruence_generators with random +-1 direction."""
    gens = congruence_generators(n)
    length = rng.randint(min_letters, max_letters)
    letters = []
    for _ in range(length):
        sym, exp = rng.choice(gens)
        if rng.random() < 0.5:
            exp = -exp
        letters.append((sym, exp))
    return GeneratorWord(n, tuple(letters))

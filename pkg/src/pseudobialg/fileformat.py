"""Line-oriented definition files.

    [lie_algebra]
    dim = 1
    [pseudoalgebra]
    rank = 2
    bracket 1 2 = 1 (d1 | 1) 2
    [cobracket]
    delta 2 = 1 (-d1 | 1) 1 2  -1 (1 | -d1) 2 1
    [r]
    r = 1/2 (1 | d1) 1 1  -1/2 (d1 | 1) 1 1
    [options]
    sample_degree = 4

Exponents are divided powers: ``d1^3`` is D^(3) = D^3 / 3!.  Bracket entries that
are not listed are filled from their transpose by skew-commutativity.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .bialgebra import Cobracket
from .hopf import LieAlgebraPresentation, TensorPower, add_into
from .pseudoalg import BracketTable
from .pseudotensor import FreeModule, ModuleElement, TensorModule, from_basis_form, swap12, to_basis_form

SECTIONS = ("lie_algebra", "pseudoalgebra", "cobracket", "r", "options")


class ParseError(ValueError):
    def __init__(self, message, line=None, column=None):
        where = "" if line is None else f"line {line}, column {column}: "
        super().__init__(where + message)
        self.line = line
        self.column = column


@dataclass
class Document:
    alg: LieAlgebraPresentation
    table: BracketTable
    cobracket: Cobracket | None = None
    r: ModuleElement | None = None
    options: dict = field(default_factory=dict)
    name: str = "instance"


_RAT = re.compile(r"[+-]?\d+(?:/\d+)?")
_INT = re.compile(r"\d+")


class _Cursor:
    def __init__(self, text, line, offset=0):
        self.text = text
        self.line = line
        self.pos = offset

    def error(self, message):
        raise ParseError(message, self.line, self.pos + 1)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def at_end(self):
        return self.peek() == ""

    def expect(self, ch):
        if self.peek() != ch:
            self.error(f"expected '{ch}'")
        self.pos += 1

    def match(self, regex):
        self.skip()
        m = regex.match(self.text, self.pos)
        if not m:
            return None
        self.pos = m.end()
        return m.group(0)

    def rational(self):
        tok = self.match(_RAT)
        if tok is None:
            self.error("expected a rational number")
        if tok.endswith("/0"):
            self.error("zero denominator")
        return Fraction(tok)

    def integer(self):
        start = self.pos
        self.skip()
        if self.peek() == "-":
            self.error("negative index or exponent")
        tok = self.match(_INT)
        if tok is None:
            self.pos = start
            self.skip()
            self.error("expected an integer")
        return int(tok)


def _hexpr(cur, dim):
    """Sum of monomials ``c * d1^e1 d2^e2``; returns {multi-index: coeff}."""
    out = {}
    first = True
    while True:
        sign = 1
        ch = cur.peek()
        if ch and ch in "+-":
            sign = -1 if ch == "-" else 1
            cur.pos += 1
        elif not first:
            break
        coeff = Fraction(1)
        seen = False
        if cur.peek().isdigit():
            coeff = cur.rational()
            seen = True
            if cur.peek() == "*":
                cur.pos += 1
        index = [0] * dim
        while cur.peek() == "d":
            cur.pos += 1
            column = cur.pos
            k = cur.integer()
            if not 1 <= k <= dim:
                raise ParseError(f"undeclared generator d{k}", cur.line, column)
            e = 1
            if cur.peek() == "^":
                cur.pos += 1
                if cur.peek() == "-":
                    cur.error("exponent < 0")
                e = cur.integer()
            index[k - 1] += e
            seen = True
        if not seen:
            cur.error("expected a monomial")
        add_into(out, {tuple(index): sign * coeff})
        first = False
        if not cur.peek() or cur.peek() not in "+-":
            break
    return out


def _terms(cur, dim, nlabels, rank):
    """Terms ``<rat> (<hexpr> | <hexpr>) k [l]``."""
    out = []
    while not cur.at_end():
        if cur.peek() == "+":
            cur.pos += 1
        coeff = cur.rational()
        cur.expect("(")
        left = _hexpr(cur, dim)
        cur.expect("|")
        right = _hexpr(cur, dim)
        cur.expect(")")
        labels = []
        for _ in range(nlabels):
            column = cur.pos + 1
            k = cur.integer()
            if not 1 <= k <= rank:
                raise ParseError(f"undeclared basis label {k}", cur.line, column)
            labels.append(k)
        out.append((coeff, left, right, tuple(labels)))
    return out


def _tensor(alg, coeff, left, right):
    terms = {}
    for f, a in left.items():
        for g, b in right.items():
            add_into(terms, {(f, g): coeff * a * b})
    return TensorPower(alg, 2, terms)


def parse_definition(text, name="instance"):
    sections = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        stripped = line.strip()
        if stripped.startswith("["):
            if not stripped.endswith("]"):
                raise ParseError("unterminated section header", lineno, len(line))
            current = stripped[1:-1].strip()
            if current not in SECTIONS:
                raise ParseError(f"unknown section [{current}]", lineno, 1)
            if current in sections:
                raise ParseError(f"duplicate section [{current}]", lineno, 1)
            sections[current] = []
            continue
        if current is None:
            raise ParseError("content before the first section", lineno, 1)
        sections[current].append((lineno, line))
    for needed in ("lie_algebra", "pseudoalgebra"):
        if needed not in sections:
            raise ParseError(f"missing section [{needed}]")

    dim, lie_lines = _header(sections["lie_algebra"], "dim")
    consts = {}
    for lineno, line, cur in _statements(lie_lines, "bracket"):
        i, j = _label(cur, dim, "generator"), _label(cur, dim, "generator")
        if i == j:
            raise ParseError("bracket of a generator with itself", lineno, 1)
        cur.expect("=")
        value = _hexpr(cur, dim) if not cur.at_end() else {}
        if not cur.at_end():
            cur.error("trailing input")
        for idx, c in value.items():
            if sum(idx) != 1:
                raise ParseError("Lie bracket values must be linear in the generators", lineno, 1)
            k = idx.index(1)
            sign = 1 if i < j else -1
            key = (min(i, j) - 1, max(i, j) - 1, k)
            add_into(consts, {key: sign * c})
    alg = LieAlgebraPresentation(dim, consts)

    rank, ps_lines = _header(sections["pseudoalgebra"], "rank")
    labels = tuple(range(1, rank + 1))
    module = FreeModule(alg, labels)
    given = {}
    for lineno, line, cur in _statements(ps_lines, "bracket"):
        i, j = _label(cur, rank, "basis label"), _label(cur, rank, "basis label")
        cur.expect("=")
        data = {}
        for coeff, left, right, (k,) in _terms(cur, dim, 1, rank):
            data[k] = data.get(k, TensorPower(alg, 2, {})) + _tensor(alg, coeff, left, right)
        if (i, j) in given:
            raise ParseError(f"duplicate bracket entry {i} {j}", lineno, 1)
        given[(i, j)] = from_basis_form(module, 2, data)
    entries = dict(given)
    for (i, j), t in given.items():
        if (j, i) not in given:
            entries[(j, i)] = -swap12(t)
    table = BracketTable(alg, labels, entries, name=name)

    cobracket = None
    if "cobracket" in sections:
        values = {}
        for lineno, line, cur in _statements(sections["cobracket"], "delta"):
            k = _label(cur, rank, "basis label")
            cur.expect("=")
            out = values.setdefault(k, {})
            for coeff, left, right, (i, j) in _terms(cur, dim, 2, rank):
                for (f, g), c in _tensor(alg, coeff, left, right).terms.items():
                    add_into(out, {((f, i), (g, j)): c})
        cobracket = Cobracket(alg, labels, values, module.name)

    r = None
    if "r" in sections:
        out = {}
        for lineno, line, cur in _statements(sections["r"], "r"):
            cur.expect("=")
            for coeff, left, right, (i, j) in _terms(cur, dim, 2, rank):
                for (f, g), c in _tensor(alg, coeff, left, right).terms.items():
                    add_into(out, {((f, i), (g, j)): c})
        r = ModuleElement(TensorModule(module, module), out)

    options = {}
    for lineno, line in sections.get("options", []):
        key, sep, value = line.partition("=")
        if not sep:
            raise ParseError("expected 'name = value'", lineno, 1)
        try:
            options[key.strip()] = int(value.strip())
        except ValueError:
            raise ParseError(f"option {key.strip()} needs an integer", lineno, line.index("=") + 2) from None
    return Document(alg, table, cobracket, r, options, name)


def _header(lines, keyword):
    if not lines:
        raise ParseError(f"missing '{keyword} = N'")
    lineno, line = lines[0]
    cur = _Cursor(line, lineno)
    word = cur.match(re.compile(r"[a-z_]+"))
    if word != keyword:
        raise ParseError(f"expected '{keyword} = N'", lineno, 1)
    cur.expect("=")
    value = cur.integer()
    if not cur.at_end():
        cur.error("trailing input")
    return value, lines[1:]


def _statements(lines, keyword):
    for lineno, line in lines:
        cur = _Cursor(line, lineno)
        word = cur.match(re.compile(r"[a-z_]+"))
        if word != keyword:
            raise ParseError(f"expected '{keyword}'", lineno, 1)
        yield lineno, line, cur


def _label(cur, bound, what):
    column = cur.pos + 1
    k = cur.integer()
    if not 1 <= k <= bound:
        raise ParseError(f"undeclared {what} {k}", cur.line, column)
    return k


# -- serialization ------------------------------------------------------------

def format_rational(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_monomial(index):
    parts = []
    for k, e in enumerate(index):
        if e == 1:
            parts.append(f"d{k + 1}")
        elif e > 1:
            parts.append(f"d{k + 1}^{e}")
    return " ".join(parts)


def format_hexpr(terms):
    if not terms:
        return "0"
    out = []
    for idx, c in sorted(terms.items(), key=lambda kv: (sum(kv[0]), kv[0])):
        mono = format_monomial(idx)
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if not mono:
            body = format_rational(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{format_rational(mag)} * {mono}"
        out.append((sign, body))
    text = ("-" if out[0][0] == "-" else "") + out[0][1]
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


def _format_terms(items):
    """items: iterable of (coeff, f, g, labels) with monomial multi-indices."""
    parts = []
    for c, f, g, labels in sorted(items, key=lambda t: (t[3], sum(t[1]) + sum(t[2]), t[1], t[2])):
        lhs = format_hexpr({f: Fraction(1)})
        rhs = format_hexpr({g: Fraction(1)})
        parts.append(f"{format_rational(c)} ({lhs} | {rhs}) " + " ".join(str(l) for l in labels))
    return "  ".join(parts)


def format_square(element, labels):
    """An element of L⊗L written as file terms, or "0"."""
    pos = _label_index(labels)
    items = [(c, f, g, (pos[i], pos[j])) for ((f, i), (g, j)), c in element.terms.items()]
    return _format_terms(items) or "0"


def _label_index(labels):
    return {l: n + 1 for n, l in enumerate(labels)}


def serialize(doc):
    alg, table = doc.alg, doc.table
    if table.rule is not None:
        raise ValueError("tables with an infinite basis cannot be serialized")
    pos = _label_index(table.labels)
    lines = ["[lie_algebra]", f"dim = {alg.dim}"]
    for (i, j), vec in sorted(alg.bracket.items()):
        if i < j and vec:
            expr = format_hexpr({tuple(1 if n == k else 0 for n in range(alg.dim)): c for k, c in vec.items()})
            lines.append(f"bracket {i + 1} {j + 1} = {expr}")
    lines += ["", "[pseudoalgebra]", f"rank = {len(table.labels)}"]
    for i in table.labels:
        for j in table.labels:
            t = table.entries[(i, j)]
            if not t:
                continue
            if pos[i] > pos[j] and table.entries[(j, i)] and t == -swap12(table.entries[(j, i)]):
                continue
            items = [(c, f, g, (pos[k],)) for k, tp in to_basis_form(t).items() for (f, g), c in tp.terms.items()]
            lines.append(f"bracket {pos[i]} {pos[j]} = {_format_terms(items)}")
    if doc.cobracket is not None:
        lines += ["", "[cobracket]"]
        for k in table.labels:
            data = doc.cobracket.values[k]
            if data:
                items = [(c, f, g, (pos[i], pos[j])) for ((f, i), (g, j)), c in data.terms.items()]
                lines.append(f"delta {pos[k]} = {_format_terms(items)}")
    if doc.r is not None:
        items = [(c, f, g, (pos[i], pos[j])) for ((f, i), (g, j)), c in doc.r.terms.items()]
        lines += ["", "[r]", f"r = {_format_terms(items)}".rstrip()]
    if doc.options:
        lines += ["", "[options]"] + [f"{k} = {v}" for k, v in sorted(doc.options.items())]
    return "\n".join(lines) + "\n"


def document_from_entry(entry):
    t = entry.table
    return Document(t.alg, t, entry.cobracket, entry.r, {}, entry.name)


def documents_equal(a, b):
    same_r = (a.r is None) == (b.r is None) and (a.r is None or a.r.terms == b.r.terms)
    same_c = (a.cobracket is None) == (b.cobracket is None) and (
        a.cobracket is None or a.cobracket == b.cobracket)
    return a.alg == b.alg and a.table == b.table and same_c and same_r and a.options == b.options

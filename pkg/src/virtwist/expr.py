"""Expression parsing and canonical printing.

Grammar (``*`` keeps the written order, which matters for operators)::

    expr  := term (('+' | '-') term)*
    term  := unary (('*' | '/') unary)*
    unary := ('-' | '+') unary | power
    power := atom ('^' ['-'] INT)?
    atom  := INT | 'i' | 't' | 'Th' | 'Dt' | '(' expr ')'

``Th`` is theta = t*d/dt and ``Dt`` is d/dt.  ``a / c`` means a * c^-1 and
needs c to be invertible in the target ring.  The printers below emit text
this grammar reads back to the identical value.
"""

import re

from .errors import LoweringError, ParseError
from .laurent import Gen, LaurentPoly
from .ore import OreElem, RatOreElem, convert_generator
from .ratfunc import RatFunc
from .scalar import I, Scalar

_TOKEN = re.compile(r"\s*(?:(\d+)|(Th|Dt|t|i)|([-+*/^()]))")


def tokenize(src):
    pos = 0
    out = []
    src = src.rstrip()
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            bad = len(src[:pos]) + len(src[pos:]) - len(src[pos:].lstrip())
            raise ParseError(f"unexpected character {src[bad]!r}", bad)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            out.append(("INT", int(m.group(1)), start))
        elif m.group(2) is not None:
            out.append((m.group(2), None, start))
        else:
            out.append((m.group(3), None, start))
        pos = m.end()
    out.append(("EOF", None, len(src)))
    return out


class _Parser:
    def __init__(self, src):
        self.toks = tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[0]!r}", tok[2])
        self.i += 1
        return tok

    def parse(self):
        if self.peek() == "EOF":
            raise ParseError("empty expression", 0)
        node = self.expr()
        tok = self.toks[self.i]
        if tok[0] != "EOF":
            raise ParseError(f"unexpected {tok[0]!r}", tok[2])
        return node

    def expr(self):
        node = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()[0]
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()[0]
            node = ("mul" if op == "*" else "div", node, self.unary())
        return node

    def unary(self):
        if self.peek() == "-":
            self.take()
            return ("neg", self.unary())
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        node = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() in ("-", "+"):
                sign = -1 if self.take()[0] == "-" else 1
            exp = self.take("INT")[1]
            node = ("pow", node, sign * exp)
        return node

    def atom(self):
        kind, val, pos = self.toks[self.i]
        if kind == "INT":
            self.i += 1
            return ("num", val)
        if kind in ("i", "t", "Th", "Dt"):
            self.i += 1
            return (kind,)
        if kind == "(":
            self.i += 1
            node = self.expr()
            self.take(")")
            return node
        raise ParseError(f"unexpected {kind!r}", pos)


def parse_tree(src):
    return _Parser(src).parse()


def _has(node, kinds):
    if node[0] in kinds:
        return True
    return any(isinstance(ch, tuple) and _has(ch, kinds) for ch in node[1:])


# -- lowering ---------------------------------------------------------------

class _Lowerer:
    def __init__(self, target, gen):
        self.target = target
        self.gen = gen

    def leaf_const(self, c):
        c = Scalar.coerce(c)
        if self.target == "laurent":
            return LaurentPoly.const(c)
        if self.target == "ratfunc":
            return RatFunc(LaurentPoly.const(c))
        cls = OreElem if self.target == "ore" else RatOreElem
        return cls.from_coeff(c, self.gen)

    def leaf_t(self):
        t = LaurentPoly.monomial(1)
        if self.target == "laurent":
            return t
        if self.target == "ratfunc":
            return RatFunc(t)
        cls = OreElem if self.target == "ore" else RatOreElem
        return cls.from_coeff(t, self.gen)

    def leaf_gen(self, name):
        if self.target in ("laurent", "ratfunc"):
            raise LoweringError(f"generator {name} is not allowed in a {self.target} expression")
        cls = OreElem if self.target == "ore" else RatOreElem
        written = Gen.THETA if name == "Th" else Gen.DDT
        g = cls.generator(written)
        return convert_generator(g, self.gen) if written is not self.gen else g

    def inverse(self, v):
        if self.target == "laurent":
            if not v.is_unit():
                raise LoweringError(f"{v} is not invertible in C[t, 1/t]")
            return v.inv()
        if self.target == "ratfunc":
            if not v:
                raise LoweringError("division by zero")
            return v.inv()
        if v.degree() != 0:
            raise LoweringError("only coefficients (no generator) can be inverted")
        c = v.coeff(0)
        if self.target == "ore" and not c.is_unit():
            raise LoweringError(f"{c} is not invertible in C[t, 1/t]")
        if not c:
            raise LoweringError("division by zero")
        return type(v).from_coeff(c.inv(), self.gen)

    def lower(self, node):
        kind = node[0]
        if kind == "num":
            return self.leaf_const(node[1])
        if kind == "i":
            return self.leaf_const(I)
        if kind == "t":
            return self.leaf_t()
        if kind in ("Th", "Dt"):
            return self.leaf_gen(kind)
        if kind == "neg":
            return -self.lower(node[1])
        if kind in ("add", "sub", "mul", "div"):
            a = self.lower(node[1])
            b = self.lower(node[2])
            if kind == "add":
                return a + b
            if kind == "sub":
                return a - b
            if kind == "mul":
                return a * b
            return a * self.inverse(b)
        if kind == "pow":
            base = self.lower(node[1])
            e = node[2]
            if e < 0:
                base = self.inverse(base)
                e = -e
            return base ** e
        raise LoweringError(f"unknown node {kind}")  # pragma: no cover


def parse(src, target="laurent", gen=None):
    """Parse ``src`` into a LaurentPoly, RatFunc, OreElem or RatOreElem.

    target is one of 'laurent', 'ratfunc', 'ore', 'ratore'.  For the operator
    targets ``gen`` picks the normal form; by default it is d/dt when only
    ``Dt`` occurs and theta otherwise.  Mixed input is converted, never
    silently reinterpreted.
    """
    if target not in ("laurent", "ratfunc", "ore", "ratore"):
        raise ValueError(f"unknown target {target!r}")
    if not src or not src.strip():
        raise ParseError("empty expression", 0)
    tree = parse_tree(src)
    if gen is None:
        gen = Gen.DDT if _has(tree, {"Dt"}) and not _has(tree, {"Th"}) else Gen.THETA
    return _Lowerer(target, Gen(gen)).lower(tree)


def parse_scalar(src):
    v = parse(src, "ratfunc")
    if not v.is_constant():
        raise LoweringError(f"{src!r} is not a constant")
    return v.num.constant_value()


def parse_scalar_list(src):
    """Comma-separated scalars; the empty string gives []."""
    if src is None or not src.strip():
        return []
    return [parse_scalar(part) for part in _split_top(src, ",")]


def _split_top(src, sep):
    parts, depth, cur = [], 0, []
    for ch in src:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


# -- printing ---------------------------------------------------------------

def _is_negative(c):
    return (c.re < 0 and not c.im) or (not c.re and c.im < 0)


def format_scalar(c, in_product=False):
    txt = str(c)
    if in_product and c.is_compound():
        return f"({txt})"
    return txt


def _t_power(k):
    if k == 0:
        return ""
    if k == 1:
        return "t"
    return f"t^{k}"


def _join(signed_terms):
    """signed_terms: list of (negative?, text)."""
    if not signed_terms:
        return "0"
    out = []
    for idx, (neg, txt) in enumerate(signed_terms):
        if idx == 0:
            out.append(f"-{txt}" if neg else txt)
        else:
            out.append(f" - {txt}" if neg else f" + {txt}")
    return "".join(out)


def _monomial_term(c, factors):
    """Signed text for c * factors (factors already joined with '*')."""
    neg = _is_negative(c)
    mag = -c if neg else c
    if not factors:
        return neg, format_scalar(mag, in_product=True)
    if mag == 1:
        return neg, factors
    return neg, f"{format_scalar(mag, in_product=True)}*{factors}"


def _laurent_terms(p):
    return [_monomial_term(c, _t_power(k)) for k, c in sorted(p.items(), reverse=True)]


def format_laurent(p):
    return _join(_laurent_terms(p))


def _wrapped_laurent(p):
    terms = _laurent_terms(p)
    if len(terms) == 1:
        return terms[0]
    return False, f"({_join(terms)})"


def format_ratfunc(r):
    if r.den == LaurentPoly.const(1):
        return format_laurent(r.num)
    return f"({format_laurent(r.num)})/({format_laurent(r.den)})"


def _gen_power(gen, m):
    name = "Th" if gen is Gen.THETA else "Dt"
    return name if m == 1 else f"{name}^{m}"


def format_ore(x):
    out = []
    for m, c in sorted(x.items(), reverse=True):
        if isinstance(c, RatFunc):
            if c.den == LaurentPoly.const(1):
                c = c.num
            else:
                frac = f"({format_ratfunc(c)})"
                out.append((False, frac if m == 0 else f"{frac}*{_gen_power(x.gen, m)}"))
                continue
        if m == 0:
            out.extend(_laurent_terms(c))
            continue
        g = _gen_power(x.gen, m)
        if c.is_monomial():
            (k, coef), = c.items()
            factors = "*".join(f for f in (_t_power(k), g) if f)
            out.append(_monomial_term(coef, factors))
        else:
            neg, txt = _wrapped_laurent(c)
            out.append((neg, f"{txt}*{g}"))
    return _join(out)

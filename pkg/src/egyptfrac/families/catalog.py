"""The family catalog.

Every entry states a target ``k/n`` and its unit-fraction denominators as
formula strings over the parameters.  Guards are evaluated in dependency
order; an in-domain binding must always yield an exact sum (checked by the
evaluator, never assumed).
"""
from __future__ import annotations

from typing import Dict, List

from .core import FamilyDef, Form, Term


def _form(name, params, k, n, terms, derived=(), guards=(), **kw) -> Form:
    terms = tuple(t if isinstance(t, Term) else Term(t) for t in terms)
    for key in ("lists", "zero_ok", "signs", "rationals", "anyint"):
        if key in kw:
            kw[key] = tuple(kw[key].split())
    return Form(name, tuple(params.split()), k, n, terms,
                tuple(derived), tuple(guards), **kw)


def _fam(fid, title, anchor, *forms) -> FamilyDef:
    return FamilyDef(fid, title, anchor, tuple(forms))


def _each(den, over, sign="1"):
    return Term(den, sign, over)


# piecewise t-domains of the shape "N if A > B; N minus {1} if A = B; t > B - A if A < B"
def _t_table(a, b, t="t"):
    return [
        (f"{t} >= 2 when {a} = {b}", f"({a}) != ({b}) or {t} >= 2"),
        (f"{t} > {b} - {a} when {a} < {b}", f"({a}) >= ({b}) or {t} > ({b}) - ({a})"),
    ]


FAMILIES: List[FamilyDef] = []
add = FAMILIES.append

add(_fam(
    "F01", "two-part base",
    "k/((kq-1)b) = 1/(bq) + 1/((kq-1)bq)",
    _form("main", "k q b", "k", "(k*q-1)*b", ["b*q", "(k*q-1)*b*q"],
          guards=[("kq > 1", "k*q > 1")], free="b"),
))

add(_fam(
    "F02", "auxiliary variable (1)",
    "k/(mt-v) = 1/((mt-v)/(k-m)) + 1/t + 1/(t(mt-v)/v), t = vqr",
    _form("main", "k m v q r", "k", "m*t - v",
          ["(m*t-v)/(k-m)", "t", "t*(m*t-v)/v"],
          derived=[("t", "v*q*r")],
          guards=[("k >= 2", "k >= 2"), ("m <= k-1", "m <= k - 1"), ("mq > 1", "m*q > 1"),
                  ("k-m | v", "divides(k - m, v)")],
          free="r", sample={"k": ("int", 2, 12)}),
))

add(_fam(
    "F03", "auxiliary variable (2)",
    "k/(kt-v) = 1/t + 1/(t(kt-v)/z) + 1/(t(kt-v)/(v-z)), t = lcm(z, v-z)x",
    _form("main", "k v z x", "k", "k*t - v",
          ["t", "t*(k*t-v)/z", "t*(k*t-v)/(v-z)"],
          derived=[("l", "lcm(z, v - z)"), ("t", "l*x")],
          guards=[("2 <= v <= k", "v >= 2 and v <= k"), ("z <= v-1", "z <= v - 1")],
          free="x"),
))

add(_fam(
    "F04", "auxiliary variable (3)",
    "(m/v)/(mt-v) = 1/(tv) + 1/(t(mt-v))",
    _form("main", "m v t", "m/v", "m*t - v", ["t*v", "t*(m*t-v)"],
          guards=[("v | m", "divides(v, m)"), ("t >= 2 when v = m", "v != m or t >= 2")],
          free="t"),
))

add(_fam(
    "F05", "auxiliary variable (4)",
    "(m/(ld))/(mt-(l+d)) = 1/(lt(mt-(l+d))) + 1/(ldt) + 1/(dt(mt-(l+d)))",
    _form("main", "m l d t", "m/r", "m*t - (l+d)",
          ["l*t*(m*t-(l+d))", "r*t", "d*t*(m*t-(l+d))"],
          derived=[("r", "l*d")],
          guards=[("ld | m", "divides(r, m)"),
                  ("l+d = m when ld = m", "r != m or l + d == m"),
                  ("t >= 2 when ld = m", "r != m or t >= 2")],
          free="t", sample={"l": ("int", 1, 6), "d": ("int", 1, 6), "_j": ("int", 1, 6),
                            "m": ("expr", "l*d*_j")}),
))

add(_fam(
    "F06", "auxiliary variable (5)",
    "k/((kw-1)t + (k-1)w - 1) = 1/(w(t+1)) + 1/(wN) + 1/((t+1)N)",
    _form("main", "k w t", "k", "N",
          ["w*(t+1)", "w*N", "(t+1)*N"],
          derived=[("N", "(k*w-1)*t + ((k-1)*w - 1)")],
          guards=[("(2k-1)w != 1", "(2*k-1)*w != 1"),
                  ("t >= 2 when (2k-1)w = 2", "(2*k-1)*w != 2 or t >= 2"),
                  ("t >= 1 when k <= 2", "k > 2 or t >= 1")],
          zero_ok="t", free="t"),
))

add(_fam(
    "F07", "auxiliary variable (6)",
    "k/((kw-1)(t-w)) = 1/(w(t-w)) + 1/(wt(kw-1)) + 1/(t(kw-1)(t-w))",
    _form("main", "k w t", "k", "(k*w-1)*(t-w)",
          ["w*(t-w)", "w*t*(k*w-1)", "t*(k*w-1)*(t-w)"],
          guards=[("kw > 1", "k*w > 1"), ("t > w", "t > w")], free="t"),
))

add(_fam(
    "F08", "auxiliary variable (7)",
    "k/((kw-1)(v-1)) = 1/(w(v-1)) + 1/(vw(kw-1)) + 1/(vw(kw-1)(v-1))",
    _form("main", "k w v", "k", "(k*w-1)*(v-1)",
          ["w*(v-1)", "v*w*(k*w-1)", "v*w*(k*w-1)*(v-1)"],
          guards=[("kw > 1", "k*w > 1"), ("v >= 2", "v >= 2")], free="v"),
))

_POWER_GUARDS = [
    ("b > c and b != 1 when A is squarefree, b >= c otherwise",
     "(b > c and b != 1) if A == A1 else b >= c"),
    ("A^b - rad(A)^c - h >= 1", "N >= 1"),
    ("rad(A)^c | A(A^b - rad(A)^c - h)h", "divides(A1**c, A*N*h)"),
]

add(_fam(
    "F09", "auxiliary variable (8)",
    "A^b/(AN h) = 1/(Ah) + 1/(ANh/rad(A)^c) + 1/(AN), N = A^b - rad(A)^c - h",
    _form("main", "A b c h", "A**b", "A*N*h",
          ["A*h", "A*N*h/A1**c", "A*N"],
          derived=[("A1", "rad(A)"), ("N", "A**b - A1**c - h")],
          guards=[("A >= 2", "A >= 2")] + _POWER_GUARDS,
          sample={"A": ("int", 2, 12), "b": ("int", 1, 5), "c": ("int", 1, 4), "h": ("int", 1, 30)}),
))

add(_fam(
    "F10", "auxiliary variable (9)",
    "k/(wl) = 1/(rvw) + 1/(vls) + 1/(rvwls/((krv-l)s - rw))",
    _form("main", "k r v w s l", "k", "w*l",
          ["r*v*w", "v*l*s", "r*v*w*l*s/D"],
          derived=[("D", "(k*r*v - l)*s - r*w")],
          guards=[("(krv-l)s - rw >= 0", "D >= 0"),
                  ("(krv-l)s - rw | rvwls", "divides(D, r*v*w*l*s)")],
          sample={name: ("int", 1, 6) for name in "k r v w s l".split()}),
))

add(_fam(
    "F11", "auxiliary variable (10), signed",
    "k/(kmv +- b) = 1/(mv) -+ 1/(ms(kmv +- b)) + 1/(mvs(kmv +- b)/(+-(v - sb)))",
    _form("main", "k m v b s sg", "k", "N",
          ["m*v", Term("m*s*N", "-sg"), "m*v*s*N/(sg*(v - s*b))"],
          derived=[("N", "k*m*v + sg*b")],
          guards=[("kmv +- b >= 1", "N >= 1"),
                  ("v - sb != 0", "v != s*b"),
                  ("+-(v - sb) | mvs(kmv +- b)", "divides(sg*(v - s*b), m*v*s*N)")],
          signs="sg"),
))

add(_fam(
    "F12", "signed corollary (f + g = ry)",
    "(k/g)/(kx +- y) = 1/(xg) -+ 1/(xr(kx +- y)) -+ 1/(xrg(kx +- y)/f), f = ry - g",
    _form("main", "k x y r g sg", "k", "g*N",
          ["x*g", Term("x*r*N", "-sg"), Term("x*r*g*N/f", "-sg")],
          derived=[("N", "k*x + sg*y"), ("f", "r*y - g")],
          guards=[("kx +- y >= 1", "N >= 1"), ("f = ry - g >= 1", "f >= 1"),
                  ("f | xrg(kx +- y)", "divides(f, x*r*g*N)")],
          signs="sg"),
))

add(_fam(
    "F13", "distributive",
    "k/n = 1/((n+v)/k) + 1/(dn(n+v)/(z alpha)) + 1/(dn(n+v)/(z beta)), alpha + beta = (k/z)dv",
    _form("main", "k z n v d alpha", "k", "n",
          ["(n+v)/k", "d*n*(n+v)/(z*alpha)", "d*n*(n+v)/(z*beta)"],
          derived=[("beta", "(k/z)*d*v - alpha")],
          guards=[("z | k", "divides(z, k)"), ("k | n+v", "divides(k, n + v)"),
                  ("beta = (k/z)dv - alpha >= 1", "beta >= 1"),
                  ("alpha, beta | dn(n+v)/z", "divides(lcm(alpha, beta), d*n*(n+v)/z)")],
          sample={"z": ("pick", (1, 2)), "_a": ("int", 1, 3), "k": ("expr", "z*_a"),
                  "n": ("int", 1, 60), "_b": ("int", 1, 4), "v": ("expr", "k*_b - n % k"),
                  "d": ("int", 1, 4), "_c": ("int", 1, 6),
                  "alpha": ("divisor", "d*n*(n + v)/z")}),
))

add(_fam(
    "F14", "distributive in t",
    "k/(mt-v) = 1/(alpha beta t/g) + 1/((mt-v)dk beta t/(zg)) + 1/((mt-v)dk alpha t/(zg))",
    _form("main", "k z d alpha beta t", "k", "m*t - v",
          ["alpha*beta*t/g", "(m*t-v)*d*k*beta*t/(z*g)", "(m*t-v)*d*k*alpha*t/(z*g)"],
          derived=[("g", "gcd(k, alpha, beta)"), ("v", "(alpha + beta)/((k/z)*d)"),
                   ("m", "k*alpha*beta/g")],
          guards=[("z | k", "divides(z, k)"),
                  ("v = (alpha+beta)z/(kd) is an integer", "is_int(v)")] + _t_table("m", "v"),
          free="t",
          sample={"k": ("int", 1, 6), "z": ("pick", (1, 2)), "d": ("int", 1, 3),
                  "alpha": ("int", 1, 12), "beta": ("int", 1, 12), "t": ("int", 1, 12)}),
))

add(_fam(
    "F15", "two-part v-split",
    "1/n = 1/(n+v) + 1/(n(n+v)/v)",
    _form("main", "n v", "1", "n", ["n+v", "n*(n+v)/v"],
          guards=[("v | n(n+v)", "divides(v, n*(n + v))")],
          sample={"n": ("int", 1, 60), "v": ("int", 1, 30)}),
))

add(_fam(
    "F16", "product rule",
    "k/n = sum_i 1/(a n_i/(k m_i)) + sum_j 1/(a n_l sum(alpha)/(k m_l alpha_j)), a/n = sum m_i/n_i",
    _form("main", "k g ms ns alphas", "k", "n",
          [_each("a*ns[i]/(k*ms[i])", "head"),
           _each("a*ns[-1]*z/(k*ms[-1]*alphas[i])", "alphas")],
          derived=[("S", "sum(ms[i]/ns[i] for i in range(len(ms)))"),
                   ("a", "num(S)*g"), ("n", "den(S)*g"),
                   ("z", "sum(alphas)"), ("head", "ms[:-1]")],
          guards=[("len(ms) = len(ns)", "len(ms) == len(ns)"),
                  ("k m_i | a n_i for every i < l", "all(divides(k*ms[i], a*ns[i]) for i in range(len(ms) - 1))"),
                  ("k m_l lcm(alpha) | a n_l sum(alpha)", "divides(k*ms[-1]*lcm(alphas), a*ns[-1]*z)")],
          lists="ms ns alphas",
          sample={"k": ("int", 1, 4), "g": ("int", 1, 6), "ms": ("list", 1, 2, 1, 4),
                  "ns": ("list", 1, 2, 1, 8), "alphas": ("list", 1, 3, 1, 4)},
          grid={"k": range(1, 7), "g": range(1, 4),
                "ms": [(a,) for a in range(1, 4)] + [(a, b) for a in range(1, 4) for b in range(1, 4)],
                "ns": [(a,) for a in range(1, 4)] + [(a, b) for a in range(1, 4) for b in range(1, 4)],
                "alphas": [(a,) for a in range(1, 4)] + [(a, b) for a in range(1, 4) for b in range(1, 4)]}),
))

_F17_SAMPLE = {"m": ("int", 1, 120), "_j": ("int", 1, 4), "c": ("expr", "4*_j - m % 4"),
               "a": ("int", 1, 3), "b": ("int", 1, 3)}

add(_fam(
    "F17", "Elsholtz-Tao pair",
    "4/m = 1/((m+c)/4) + 1/((m+c)(a+b)m/(4ac)) + 1/((m+c)(a+b)m/(4bc)); "
    "4/m = 1/((mc+1)m/4) + 1/((mc+1)(a+b)/(4ac)) + 1/((mc+1)(a+b)/(4bc))",
    _form("form1", "m a b c", "4", "m",
          ["(m+c)/4", "(m+c)*(a+b)*m/(4*a*c)", "(m+c)*(a+b)*m/(4*b*c)"],
          guards=[("m + c = 0 mod 4", "divides(4, m + c)"),
                  ("4ac | (m+c)(a+b)m", "divides(4*a*c, (m+c)*(a+b)*m)"),
                  ("4bc | (m+c)(a+b)m", "divides(4*b*c, (m+c)*(a+b)*m)")],
          sample=_F17_SAMPLE),
    _form("form2", "m a b c", "4", "m",
          ["(m*c+1)*m/4", "(m*c+1)*(a+b)/(4*a*c)", "(m*c+1)*(a+b)/(4*b*c)"],
          guards=[("(mc+1)m = 0 mod 4", "divides(4, (m*c + 1)*m)"),
                  ("4ac | (mc+1)(a+b)", "divides(4*a*c, (m*c+1)*(a+b))"),
                  ("4bc | (mc+1)(a+b)", "divides(4*b*c, (m*c+1)*(a+b))")],
          # c must divide a+b (it is coprime to mc+1); then solve mc + 1 = 0 mod M
          sample={"a": ("int", 1, 6), "b": ("int", 1, 6), "c": ("divisor", "a + b"),
                  "_Q": ("expr", "(a + b)/c"),
                  "_M": ("expr", "lcm(4*a/gcd(4*a, _Q), 4*b/gcd(4*b, _Q))"),
                  "_j": ("int", 1, 12), "m": ("expr", "(_M*_j - 1)/c")}),
))

add(_fam(
    "F18", "LCM partition",
    "k/(kw - (e+u)/f) = 1/w + 1/(wf N/e) + 1/(wf N/u), w = lcm(e, u)",
    _form("main", "k e u f", "k", "N",
          ["w", "w*f*N/e", "w*f*N/u"],
          derived=[("w", "lcm(e, u)"), ("N", "k*w - (e + u)/f")],
          guards=[("f | e+u", "divides(f, e + u)")],
          sample={"f": ("int", 1, 6)}),
))

add(_fam(
    "F19", "LCM partition in t",
    "k/(kwt - (e+u)/f) = 1/(wt) + 1/(wtf N/e) + 1/(wtf N/u), w = lcm(e, u)",
    _form("main", "k e u f t", "k", "N",
          ["w*t", "w*t*f*N/e", "w*t*f*N/u"],
          derived=[("w", "lcm(e, u)"), ("h", "(e + u)/f"), ("N", "k*w*t - h")],
          guards=[("f | e+u", "divides(f, e + u)")] + _t_table("k*w", "h"),
          free="t", sample={"f": ("int", 1, 6)}),
))

add(_fam(
    "F20", "two-offset t-form",
    "k/((kw-c)t - d) = 1/(wN/c) + 1/(wt) + 1/(wtN/d), w = lcm(c, d)",
    _form("main", "k c d t", "k", "N",
          ["w*N/c", "w*t", "w*t*N/d"],
          derived=[("w", "lcm(c, d)"), ("N", "(k*w - c)*t - d")],
          guards=_t_table("k*w", "c + d"), free="t"),
))

add(_fam(
    "F21", "multi-size",
    "k/v = 1/w + sum_i 1/(vw/c_i), w = lcm(c), v = kw - sum(c)",
    _form("main", "k cs", "k", "v",
          ["w", _each("v*w/cs[i]", "cs")],
          derived=[("w", "lcm(cs)"), ("v", "k*w - sum(cs)")],
          lists="cs"),
))

add(_fam(
    "F22", "m-power",
    "k/M = 1/(P m^(d-1)) + 1/(PM/(2l+e)) + 1/(P m^(d-1) M/(e+1)), "
    "P = (mt+2l)/k, M = m^(d-1)(mt-e) - (e+1)",
    _form("main", "k m l e d t", "k", "M",
          ["P*m**(d-1)", "P*M/(2*l + e)", "P*m**(d-1)*M/(e + 1)"],
          derived=[("P", "(m*t + 2*l)/k"), ("M", "m**(d-1)*(m*t - e) - (e + 1)")],
          guards=[("k | mt + 2l", "divides(k, m*t + 2*l)"),
                  ("e+1 | (mt+2l)/k", "divides(e + 1, P)"),
                  ("e+2l | (mt+2l)/k", "divides(e + 2*l, P)"),
                  ("m^(d-1)(mt-e) - (e+1) >= 1", "M >= 1")],
          sample={"l": ("int", 1, 6), "e": ("int", 1, 6), "d": ("int", 1, 4), "k": ("int", 1, 6),
                  "_j": ("int", 1, 4), "_P": ("expr", "lcm(e + 1, e + 2*l)*_j"),
                  "m": ("divisor", "k*_P - 2*l"), "t": ("expr", "(k*_P - 2*l)/m")}),
))

add(_fam(
    "F23", "q-form",
    "k/v = 1/w + 1/b + 1/(vb/c), b = (qv+c)/k, w = b/(q-1)",
    _form("main", "k c q v", "k", "v",
          ["w", "b", "v*b/c"],
          derived=[("b", "(q*v + c)/k"), ("w", "b/(q - 1)")],
          guards=[("q >= 2", "q >= 2"), ("c | q-1", "divides(c, q - 1)"),
                  ("k | qv+c", "divides(k, q*v + c)"), ("q-1 | (qv+c)/k", "divides(q - 1, b)")],
          sample={"q": ("int", 2, 9), "c": ("divisor", "q - 1"), "k": ("int", 1, 4),
                  "_w": ("int", 1, 30), "v": ("expr", "(k*(q - 1)*_w - c)/q")}),
))

add(_fam(
    "F24", "congruence shift (1)",
    "k/v = 1/r + 1/(rm) + 1/(rmv/c), r = (k omega - 1)t - (z + omega - 1), m = kt - 2, c = kz - (k-1)",
    _form("main", "k omega z y", "k", "v",
          ["r", "r*m", "r*m*v/c"],
          derived=[("t", "(k*y - 2)*(z - 1) + y if k >= 3 else y"),
                   ("v", "k*(k*omega - 1)*t - (2*(k*omega - 1) + (k*z - (k - 1)))"),
                   ("r", "(k*omega - 1)*t - (z + omega - 1)"),
                   ("m", "k*t - 2"), ("c", "k*z - (k - 1)")],
          guards=[("z <= (k-2)omega and ky - 2 >= 1 when k >= 3",
                   "k < 3 or (z <= (k - 2)*omega and k*y >= 3)"),
                  ("z <= 2omega - 1 and t > z + 1 when k = 2",
                   "k != 2 or (z <= 2*omega - 1 and t > z + 1)"),
                  ("omega >= 2, omega-1 | z and t > 2 + z/(omega-1) when k = 1",
                   "k != 1 or (omega >= 2 and divides(omega - 1, z) and t > 2 + z/(omega - 1))"),
                  ("r >= 1", "r >= 1"), ("m = kt - 2 >= 1", "m >= 1"),
                  ("kz - (k-1) | rmv", "divides(c, r*m*v)")],
          free="y", sample={"k": ("int", 1, 8), "omega": ("int", 1, 8), "z": ("int", 1, 12),
                            "y": ("int", 1, 12)}),
))

add(_fam(
    "F25", "congruence shift (2)",
    "k/v = 1/r + 1/(vt) + 1/(rvt/c), t = cx, r = (k omega - l)t - c",
    _form("main", "k omega l c x", "k", "v",
          ["r", "v*t", "r*v*t/c"],
          derived=[("t", "c*x"),
                   ("v", "k*(k*omega - l)*t - k*(omega + c) + l"),
                   ("r", "(k*omega - l)*t - c")],
          guards=[("omega(k-1) > l + c when k >= 2", "k < 2 or omega*(k - 1) > l + c"),
                  ("omega > 1 when k = 3", "k != 3 or omega > 1"),
                  ("omega > 2 when k = 2", "k != 2 or omega > 2"),
                  ("omega >= 3, omega > l + c and t >= 2 when k = 1",
                   "k != 1 or (omega >= 3 and omega > l + c and t >= 2)"),
                  ("r >= 1", "r >= 1")],
          free="x"),
))

add(_fam(
    "F26", "b divides k",
    "(k/b)/((kw-b)t - kv) = 1/(b(wt-v)) + 1/(wN) + 1/(w(wt-v)N/v)",
    _form("main", "k v b w t", "k/b", "N",
          ["b*(w*t - v)", "w*N", "w*(w*t - v)*N/v"],
          derived=[("N", "(k*w - b)*t - k*v")],
          guards=[("b | k", "divides(b, k)"), ("v | w", "divides(v, w)"),
                  ("kw > b", "k*w > b"), ("w > v", "w > v")],
          free="t", sample={"v": ("int", 1, 6), "b": ("pick", (1, 2, 3, 4))}),
))

add(_fam(
    "F27", "s-set",
    "k/v = 1/(w prod a) + sum_i 1/(vw a_1...a_(i-1)/b_i), "
    "v = (...((kw - b_1)a_1 - b_2)a_2 - ...) - b_s, w = lcm(b)",
    _form("main", "k bs mults", "k", "v",
          ["w*prod(mults)", _each("v*w*prod(mults[:i])/bs[i]", "bs")],
          derived=[("w", "lcm(bs)"), ("v", "nested(k*w, bs, mults)")],
          guards=[("len(mults) = len(bs) - 1", "len(mults) == len(bs) - 1")],
          lists="bs mults", zero_ok="mults",
          sample={"bs": ("list", 1, 3, 1, 8), "mults": ("list", 0, 2, 1, 6)},
          grid={"mults": [()] + [(a,) for a in range(1, 7)]}),
))

add(_fam(
    "F28", "a^b family",
    "a^b/(a^v t - S) = 1/(a^(v-b) t) + sum_i 1/(a^(v-b-c_i) t N) + 1/(a^(v-b) t N), "
    "S = sum_i a^(c_i) + 1; prime-power variant of auxiliary identity (8)",
    _form("power", "a b cs v t", "a**b", "N",
          ["a**(v - b)*t", _each("a**(v - b - cs[i])*t*N", "cs"), "a**(v - b)*t*N"],
          derived=[("S", "sumpow(a, cs) + 1"), ("N", "a**v*t - S")],
          guards=[("a >= 2", "a >= 2"), ("v > b + c_i for every i", "all(v > b + x for x in cs)")],
          lists="cs", free="t",
          sample={"a": ("int", 2, 7), "b": ("int", 1, 4), "cs": ("list", 1, 3, 1, 4),
                  "v": ("int", 2, 12), "t": ("int", 1, 30)}),
    _form("prime_power", "p alpha b c h", "A**b", "A*N*h",
          ["A*h", "A*N*h/A1**c", "A*N"],
          derived=[("A", "p**alpha"), ("A1", "p"), ("N", "A**b - A1**c - h")],
          guards=[("p is prime", "isprime(p)")] + _POWER_GUARDS,
          sample={"p": ("pick", (2, 3, 5, 7, 11)), "alpha": ("int", 1, 4), "b": ("int", 1, 4),
                  "c": ("int", 1, 6), "h": ("int", 1, 30)}),
))

add(_fam(
    "F29", "kb-1 rational split",
    "k/L = 1/(L gam b/lam1) + 1/(L gam b/lam2) + 1/(Lb), lam1 + lam2 = gam(kb - 1), L = lcm(lam1, lam2)",
    _form("main", "k b lam1 gam", "k", "L",
          ["L*gam*b/lam1", "L*gam*b/lam2", "L*b"],
          derived=[("lam2", "gam*(k*b - 1) - lam1"), ("L", "lcm(lam1, lam2)")],
          guards=[("kb > 1", "k*b > 1"), ("gam(kb-1) - lam1 >= 1", "lam2 >= 1")]),
))

add(_fam(
    "F30", "kb-1 product",
    "k/v = 1/w + 1/b + 1/(bv), qv = kb - 1, b = (q-1)w",
    _form("main", "k q w", "k", "v",
          ["w", "b", "b*v"],
          derived=[("b", "(q - 1)*w"), ("v", "(k*b - 1)/q")],
          guards=[("q >= 2", "q >= 2"), ("q | kb - 1", "divides(q, k*b - 1)")],
          sample={"k": ("int", 1, 12), "q": ("int", 2, 6), "w": ("int", 1, 24)}),
))

add(_fam(
    "F31", "kb-1 closed",
    "k/(kb-1) = 1/b + 1/(kb^2) + 1/(kb^2(kb-1))",
    _form("main", "k b", "k", "k*b - 1",
          ["b", "k*b*b", "k*b*b*(k*b - 1)"],
          guards=[("b >= 2 when k = 1", "k != 1 or b >= 2")], free="b"),
))


def _q_form(name, n_src, q_src):
    return _form(name, "t", "4", "N",
                 ["X", "X/(q - 1)", "N*X"],
                 derived=[("N", n_src), ("q", q_src), ("X", "(N*q + 1)/4")],
                 free="t")


add(_fam(
    "F32", "mod-8 q-families",
    "4/n = 1/X + 1/(X/(q-1)) + 1/(nX), X = (nq + 1)/4",
    _q_form("8t-1", "8*t - 1", "8*t + 1"),
    _q_form("8t-5", "8*t - 5", "8*t - 3"),
    _q_form("24t-7a", "24*t - 7", "8*t - 1"),
    _q_form("24t-7b", "24*t - 7", "7"),
    _q_form("24t-19", "24*t - 19", "8*t - 5"),
    _q_form("8t-3", "8*t - 3", "3"),
))

add(_fam(
    "F33", "Schinzel generalization (1)",
    "4/N = 1/X + 1/(X/(4 omega - 2)) + 1/(NX), N = 8(2 omega - 1)t - (4 omega - 1), X = (N(4 omega - 1) + 1)/4",
    _form("main", "omega t", "4", "N",
          ["X", "X/(4*omega - 2)", "N*X"],
          derived=[("N", "8*(2*omega - 1)*t - (4*omega - 1)"), ("X", "(N*(4*omega - 1) + 1)/4")],
          free="t"),
))

add(_fam(
    "F34", "Schinzel generalization (2)",
    "4/N = 1/X + 1/(X/(4 omega)) + 1/(NX), N = 16 omega t - (12 omega + 1), X = (N(4 omega + 1) + 1)/4",
    _form("main", "omega t", "4", "N",
          ["X", "X/(4*omega)", "N*X"],
          derived=[("N", "16*omega*t - (12*omega + 1)"), ("X", "(N*(4*omega + 1) + 1)/4")],
          free="t"),
))

add(_fam(
    "F35", "Schinzel generalization in k (1)",
    "k/N = 1/(X/k) + 1/(X/(k(k omega - 2))) + 1/(NX/k), N = (k^2 omega - 2k)t - (k omega - 1), X = N(k omega - 1) + 1",
    _form("main", "k omega t", "k", "N",
          ["X/k", "X/(k*(k*omega - 2))", "N*X/k"],
          derived=[("N", "(k*k*omega - 2*k)*t - (k*omega - 1)"), ("X", "N*(k*omega - 1) + 1")],
          guards=[("omega > 1 when k = 2", "k != 2 or omega > 1"),
                  ("omega > 2 when k = 1", "k != 1 or omega > 2"),
                  ("t > (2 omega - 1)/(4(omega - 1)) when k = 2", "k != 2 or t > (2*omega - 1)/(4*(omega - 1))"),
                  ("t > (omega - 1)/(omega - 2) when k = 1", "k != 1 or t > (omega - 1)/(omega - 2)")],
          free="t"),
))

add(_fam(
    "F36", "Schinzel generalization in k (2)",
    "k/N = 1/(X/k) + 1/(X/(k^2 omega)) + 1/(NX/k), N = k^2 omega t - ((k-1)k omega + 1), X = N(k omega + 1) + 1",
    _form("main", "k omega t", "k", "N",
          ["X/k", "X/(k*k*omega)", "N*X/k"],
          derived=[("N", "k*k*omega*t - ((k - 1)*k*omega + 1)"), ("X", "N*(k*omega + 1) + 1")],
          guards=[("omega t > 1 when k = 1", "k != 1 or omega*t > 1")],
          free="t"),
))

add(_fam(
    "F37", "triangle special (1)",
    "4/N = 1/R + 1/(R(4t-2)) + 1/(NR(4t-2)), N = 4(4 omega - 1)t - (2(4 omega - 1) + 1), R = (4 omega - 1)t - omega",
    _form("main", "omega t", "4", "N",
          ["R", "R*(4*t - 2)", "N*R*(4*t - 2)"],
          derived=[("N", "4*(4*omega - 1)*t - (2*(4*omega - 1) + 1)"), ("R", "(4*omega - 1)*t - omega")],
          free="t"),
))

add(_fam(
    "F38", "triangle special (2)",
    "4/N = 1/((4 omega - 1)t - 1) + 1/(Nt) + 1/(N((4 omega - 1)t - 1)t), N = 4(4 omega - 1)t - (4 omega + 3)",
    _form("main", "omega t", "4", "N",
          ["(4*omega - 1)*t - 1", "N*t", "N*((4*omega - 1)*t - 1)*t"],
          derived=[("N", "4*(4*omega - 1)*t - (4*omega + 3)")],
          free="t"),
))

add(_fam(
    "F39", "triangle special in k (1)",
    "k/N = 1/R + 1/(R(kt-2)) + 1/(NR(kt-2)), N = k(k omega - 1)t - (2(k omega - 1) + 1), R = (k omega - 1)t - omega",
    _form("main", "k omega t", "k", "N",
          ["R", "R*(k*t - 2)", "N*R*(k*t - 2)"],
          derived=[("N", "k*(k*omega - 1)*t - (2*(k*omega - 1) + 1)"), ("R", "(k*omega - 1)*t - omega")],
          guards=[("omega > 1 when k = 1", "k != 1 or omega > 1"),
                  ("t > (4 omega - 1)/(4 omega - 2) when k = 2", "k != 2 or t > (4*omega - 1)/(4*omega - 2)"),
                  ("t > (2 omega - 1)/(omega - 1) when k = 1", "k != 1 or t > (2*omega - 1)/(omega - 1)"),
                  ("kt - 2 >= 1", "k*t >= 3"), ("R >= 1", "R >= 1")],
          free="t"),
))

add(_fam(
    "F40", "triangle special in k (2)",
    "k/N = 1/((a omega + b)t - 1) + 1/(Nt) + 1/(N((a omega + b)t - 1)t), N = k(a omega + b)t - (a omega + b + k)",
    _form("main", "k a omega b t", "k", "N",
          ["(a*omega + b)*t - 1", "N*t", "N*((a*omega + b)*t - 1)*t"],
          derived=[("c", "b + k"), ("N", "k*(a*omega + b)*t - (a*omega + c)")],
          guards=[("t > (a omega + b + k)/(k(a omega + b))", "t > (a*omega + c)/(k*(a*omega + b))")],
          free="t"),
))

add(_fam(
    "F41", "triangle-j",
    "k/(k(kr-1)t - (kr + k - 1)) = 1/((kr-1)t - 1) + 1/(Nt) + 1/(N((kr-1)t - 1)t)",
    _form("main", "k r t", "k", "N",
          ["(k*r - 1)*t - 1", "N*t", "N*((k*r - 1)*t - 1)*t"],
          derived=[("N", "k*(k*r - 1)*t - (k*r + (k - 1))")],
          guards=[("r >= 2 when k = 1", "k != 1 or r >= 2"),
                  ("t >= 2 when k = 2 and r = 1", "not (k == 2 and r == 1) or t >= 2"),
                  ("t > r/(r-1) when k = 1", "k != 1 or t > r/(r - 1)"),
                  ("(kr-1)t - 1 >= 1", "(k*r - 1)*t >= 2")],
          free="t"),
))

add(_fam(
    "F42", "real-domain family at rational points",
    "4/(8x-1) = 1/(2x) + 1/(16x^2) + 1/(16x^2(8x-1)); shifted 8t-5 and 40t-23 forms",
    _form("real", "x", "4", "8*x - 1",
          ["2*x", "16*x*x", "16*x*x*(8*x - 1)"],
          guards=[("2x is an integer", "is_int(2*x)")],
          rationals="x", sample={"x": ("rat", 60, 2)}),
    _form("shifted", "t", "4", "8*t - 5",
          ["2*t - 1", "4*(2*t - 1)**2", "4*(2*t - 1)**2*(8*t - 5)"], free="t"),
    _form("forty", "t", "4", "40*t - 23",
          ["5*(2*t - 1)", "2*(2*t - 1)*(40*t - 23)", "10*(2*t - 1)*(40*t - 23)"], free="t"),
))

add(_fam(
    "F43", "triangular numbers",
    "4/n = 1/((n+1)/4) + 1/C(n+1, 2) + 1/C(n+1, 2), n = -1 mod 4",
    _form("direct", "n", "4", "n",
          ["(n + 1)/4", "C(n + 1, 2)", "C(n + 1, 2)"],
          guards=[("n = -1 mod 4", "divides(4, n + 1)")],
          sample={"n": ("int", 1, 400)}),
    _form("progression", "j", "4", "N",
          ["j", "C(N + 1, 2)", "C(N + 1, 2)"],
          derived=[("N", "4*j - 1")], free="j"),
))

add(_fam(
    "F44", "natural sizes",
    "4/(4Wt - (2r+1)) = 1/(Wt) + 1/(r't N) + 1/((2r - r' + 1)t N), W = r'(2r - r' + 1)",
    _form("main", "r rp t", "4", "N",
          ["W*t", "rp*t*N", "(2*r - rp + 1)*t*N"],
          derived=[("W", "rp*(2*r - rp + 1)"), ("N", "4*W*t - (2*r + 1)")],
          guards=[("r' <= r", "rp <= r")], free="t"),
))

add(_fam(
    "F45", "modular equations",
    "4/(4t+1) = 1/(t+1) + 1/((t+1)2s(4t+1)) + 1/((t+1)2s(4t+1)/(6s-1)) and the odd-s twin; "
    "general ladder s = az + j of auxiliary identity (10)",
    _form("even", "t s", "4", "N",
          ["t + 1", "(t + 1)*2*s*N", "(t + 1)*2*s*N/(6*s - 1)"],
          derived=[("N", "4*t + 1")],
          guards=[("6s - 1 | 2s(t+1)(4t+1)", "divides(6*s - 1, (t + 1)*2*s*N)")],
          sample={"s": ("int", 1, 12), "_j": ("int", 1, 20), "t": ("expr", "(6*s - 1)*_j - 1 - _j % 2")}),
    _form("odd", "t s", "4", "N",
          ["t + 1", "(t + 1)*(2*s + 1)*N", "(t + 1)*(2*s + 1)*N/(6*s + 2)"],
          derived=[("N", "4*t + 1")],
          guards=[("6s + 2 | (2s+1)(t+1)(4t+1)", "divides(6*s + 2, (t + 1)*(2*s + 1)*N)")],
          sample={"s": ("int", 1, 12), "_j": ("int", 1, 20), "t": ("expr", "(6*s + 2)*_j - 1")}),
    _form("ladder", "k m v b sg a z j", "k", "N",
          ["m*v", Term("m*s*N", "-sg"), "m*v*s*N/(sg*(v - s*b))"],
          derived=[("s", "a*z + j"), ("N", "k*m*v + sg*b")],
          guards=[("j <= a - 1", "j <= a - 1"), ("kmv +- b >= 1", "N >= 1"),
                  ("v - sb != 0", "v != s*b"),
                  ("+-(v - sb) | mvs(kmv +- b)", "divides(sg*(v - s*b), m*v*s*N)")],
          signs="sg", zero_ok="j",
          # v = sb +- delta makes the third divisor delta; m a multiple of delta
          sample={"k": ("int", 1, 6), "sg": ("choice", (-1, 1)), "b": ("int", 1, 6),
                  "a": ("int", 1, 4), "z": ("int", 1, 6), "_u": ("int", 0, 11), "j": ("expr", "_u % a"),
                  "_d": ("int", 1, 6), "v": ("expr", "(a*z + j)*b + sg*_d"),
                  "_i": ("int", 1, 4), "m": ("expr", "_d*_i")},
          grid={"k": (4,), "m": range(1, 5), "v": range(1, 5), "b": range(1, 5), "sg": (-1, 1),
                "a": range(1, 5), "z": range(1, 4), "j": range(0, 4)}),
))

add(_fam(
    "F46", "modular 40r-23",
    "4/(40r-23) = 1/(5(2r-1)) + 1/(2(2r-1)(40r-23)) + 1/(10(2r-1)(40r-23))",
    _form("main", "r", "4", "40*r - 23",
          ["5*(2*r - 1)", "2*(2*r - 1)*(40*r - 23)", "10*(2*r - 1)*(40*r - 23)"], free="r"),
))

add(_fam(
    "F47", "modular 40t-3",
    "4/(40t-3) = 1/(10t) + 1/(5t(40t-3)) + 1/(10t(40t-3))",
    _form("main", "t", "4", "40*t - 3",
          ["10*t", "5*t*(40*t - 3)", "10*t*(40*t - 3)"], free="t"),
))

add(_fam(
    "F48", "mod-4 split kit",
    "4/(4x) = 1/(2x)+1/(3x)+1/(6x); 4/(4x-2) two- and three-part; 4/(4z-1) with c/(c-1); "
    "4/(4z-3) with 3 = f/g + h/g; 4/(24t+1) with 6t+1 <= z <= 12t",
    _form("n0mod4", "x", "4", "4*x", ["2*x", "3*x", "6*x"], free="x"),
    _form("n2mod4", "x", "4", "4*x - 2", ["x + 1", "x*(x + 1)", "x*(2*x - 1)"], free="x"),
    _form("two_part", "x", "4", "4*x - 2", ["x", "x*(2*x - 1)"], free="x"),
    _form("n3mod4", "z c", "4", "N",
          ["z", "c*N*z/(c - 1)", "c*N*z"],
          derived=[("N", "4*z - 1")],
          guards=[("c >= 2", "c >= 2"), ("c - 1 | cnz", "divides(c - 1, c*N*z)")],
          free="z"),
    _form("n1mod4", "z g f", "4", "N",
          ["z", "N*z*g/f", "N*z*g/h"],
          derived=[("N", "4*z - 3"), ("h", "3*g - f")],
          guards=[("f in {1, 2, 3}", "f <= 3"), ("h = 3g - f >= 1", "h >= 1"),
                  ("f | nzg", "divides(f, N*z*g)"), ("3g - f | nzg", "divides(h, N*z*g)")],
          sample={"z": ("int", 1, 200), "g": ("int", 1, 12), "f": ("int", 1, 3)}),
    _form("24t+1", "t y v mm", "4", "N",
          ["z", "v*z*N/mm", "v*z*N/nn"],
          derived=[("N", "24*t + 1"), ("z", "6*t + 1 + y"), ("nn", "v*(4*y + 3) - mm")],
          guards=[("6t+1 <= z <= 12t", "z >= 6*t + 1 and z <= 12*t"),
                  ("v(4y+3) - m >= 1", "nn >= 1"),
                  ("m | vz(24t+1)", "divides(mm, v*z*N)"),
                  ("v(4y+3) - m | vz(24t+1)", "divides(nn, v*z*N)")],
          zero_ok="y",
          sample={"t": ("int", 1, 12), "_u": ("int", 0, 10**6), "y": ("expr", "_u % (6*t)"),
                  "v": ("int", 1, 6), "mm": ("divisor_where", "v*(6*t + 1 + y)*(24*t + 1)",
                         "v*(4*y + 3) > _x and divides(v*(4*y + 3) - _x, v*(6*t + 1 + y)*(24*t + 1))")}),
))

add(_fam(
    "F49", "120t-23 and 40v-7",
    "4/(120t-23) = 1/(5(6t-1)) + 1/(10t n) + 1/(10t(6t-1)n); 4/(40v-7) = 1/(10v) + 1/(5v n) + 1/(2v n)",
    _form("120t-23", "t", "4", "120*t - 23",
          ["5*(6*t - 1)", "10*t*(120*t - 23)", "10*t*(6*t - 1)*(120*t - 23)"], free="t"),
    _form("40v-7", "v", "4", "40*v - 7",
          ["10*v", "5*v*(40*v - 7)", "2*v*(40*v - 7)"], free="v"),
))

add(_fam(
    "F50", "8t+1 family",
    "4/(8t+1) = 1/(b(8t+2)) + 1/(b(8t+1)/(4b-1)) + 1/(b(8t+2)(8t+1)), t = (4b-1)m + r, 4b-1 | 2r+b",
    _form("main", "b r m", "4", "8*t + 1",
          ["b*(8*t + 2)", "b*(8*t + 1)/(4*b - 1)", "b*(8*t + 2)*(8*t + 1)"],
          derived=[("t", "(4*b - 1)*m + r")],
          guards=[("4b - 1 | 2r + b", "divides(4*b - 1, 2*r + b)"),
                  ("t = (4b-1)m + r >= 1", "t >= 1")],
          anyint="r", free="m",
          sample={"b": ("int", 1, 12), "_j": ("int", -2, 2),
                  "r": ("expr", "(4*b - 1)*_j - (2*b*b) % (4*b - 1)"), "m": ("int", 0, 12)}),
))

_KEY_TERMS = ["r*v*w", "v*s", "r*v*w*s/D"]


def _key_sample(with_b: bool, with_v: bool = True) -> Dict[str, tuple]:
    b = "b" if with_b else "_b"
    spec = {"_a": ("int", 1, 150), "w": ("expr", "4*_a + 1"), b: ("int", 1, 3),
            "_P": ("expr", f"((4*{b} - 1)*w + 1)/4"), "r": ("divisor", "_P")}
    if with_v:
        spec["v"] = ("expr", "_P/r")
    spec["_E"] = ("divisor", "r*_P")
    spec["s"] = ("expr", f"(_E + r)/(4*{b} - 1)")
    return spec
_KEY_GUARDS = [("divisor (4rv-1)s - rw is nonzero", "D != 0"),
               ("(4rv-1)s - rw > 0", "D > 0"),
               ("(4rv-1)s - rw | rvws", "divides(D, r*v*w*s)")]

add(_fam(
    "F51", "key-equation verifier",
    "4/w = 1/(rvw) + 1/(vs) + 1/(rvws/((4rv-1)s - rw))",
    _form("key", "w r v s", "4", "w", _KEY_TERMS,
          derived=[("D", "(4*r*v - 1)*s - r*w")], guards=_KEY_GUARDS,
          sample=_key_sample(False)),
    _form("row", "w b r v s", "4", "w", _KEY_TERMS,
          derived=[("D", "(4*r*v - 1)*s - r*w")],
          guards=[("rv = ((4b-1)w + 1)/4", "4*r*v == (4*b - 1)*w + 1")] + _KEY_GUARDS,
          sample=_key_sample(True)),
))

add(_fam(
    "F52", "b-parametrized key equation",
    "4/w = 1/(rvw) + 1/(vs) + 1/(rvs/((4b-1)s - r)), rv = ((4b-1)w + 1)/4",
    _form("main", "w b r s", "4", "w",
          ["r*v*w", "v*s", "r*v*s/E"],
          derived=[("v", "((4*b - 1)*w + 1)/(4*r)"), ("E", "(4*b - 1)*s - r")],
          guards=[("v = ((4b-1)w + 1)/(4r) is an integer", "is_int(v)"),
                  ("(4b-1)s - r > 0", "E > 0"),
                  ("(4b-1)s - r | rvs", "divides(E, r*v*s)")],
          sample=_key_sample(True, with_v=False)),
))

add(_fam(
    "F53", "LCM triple",
    "4d/(n gcd(ab, ac, bc)) = 1/(bc) + 1/(ac) + 1/(ab), n = 4d lcm(a, b, c)/(a+b+c); "
    "v-term: k/(n g) = sum_i 1/(d l/x_i)",
    _form("triple", "a b c d", "4*d", "n*G",
          ["b*c", "a*c", "a*b"],
          derived=[("G", "gcd(a*b, a*c, b*c)"), ("n", "lcm(a, b, c)*4*d/(a + b + c)")],
          guards=[("gcd(a, b, c) = 1", "gcd(a, b, c) == 1"), ("4 | a + b + c", "divides(4, a + b + c)"),
                  ("4d lcm(a, b, c)/(a+b+c) is an integer", "is_int(n)")],
          sample={"a": ("int", 1, 12), "b": ("int", 1, 12), "_j": ("int", 1, 6),
                  "c": ("expr", "4*_j - (a + b) % 4"), "d": ("int", 1, 6)}),
    _form("vterm", "k xs d", "k", "n*g",
          [_each("d*P/xs[i]", "xs")],
          derived=[("P", "prod(xs)"), ("n", "lcm(xs)*d*k/sum(xs)"),
                   ("g", "gcd(P/x for x in xs)")],
          guards=[("gcd(x) = 1", "gcd(xs) == 1"), ("k | sum(x)", "divides(k, sum(xs))"),
                  ("d lcm(x) k/sum(x) is an integer", "is_int(n)")],
          lists="xs",
          sample={"xs": ("list", 1, 4, 1, 8), "k": ("divisor", "sum(xs)"), "_j": ("int", 1, 4),
                  "d": ("expr", "_j*den(lcm(xs)*k/sum(xs))")}),
))

BY_ID: Dict[str, FamilyDef] = {f.id: f for f in FAMILIES}

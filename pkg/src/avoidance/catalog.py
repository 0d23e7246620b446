"""Named example varieties used throughout the docs, demos and tests."""
from __future__ import annotations

from .classify import CI_CURVE, HYPERSURFACE, VarietySpec
from .poly import parse_poly

SEGRE = "x0*x3 - x1*x2"
SPHERE = "x0^2 + x1^2 + x2^2 - x3^2"
TORUS = "(x0^2 + x1^2 + x2^2 + 3*x3^2)^2 - 16*(x0^2 + x1^2)*x3^2"
QUARTIC = "x0^4 + x1^4 - x2^4 - x3^4"
TROTT = "144*(x0^4 + x1^4) - 225*x2^2*(x0^2 + x1^2) + 350*x0^2*x1^2 + 81*x2^4"
TWO_CIRCLES = "(x0^2 + x1^2 - x2^2)*((x0 - 2*x2)^2 + (x1 - 2*x2)^2 - x2^2)"
CIRCLE = "x0^2 + x1^2 - x2^2"
# space curve x^2 - y^2 - xz = 0, z - 4x^3 + 3x = 0, homogenized with x3
SEXTIC_CURVE = ("x0^2 - x1^2 - x0*x2", "x2*x3^2 - 4*x0^3 + 3*x0*x3^2")


def _binary(text):
    """Coefficient list (s0^d first) of a binary form written in x0 = s0, x1 = s1."""
    p = parse_poly(text, 2)
    d = p.degree()
    return [int(p.terms.get((d - i, i), 0)) for i in range(d + 1)]


# a real parametrization of the sextic curve (degree 6, no base points)
SEXTIC_PARAMETRIZATION = (
    _binary("(x0^2 - x1^2)*(x0^2 + x1^2)^2"),
    _binary("4*x0*x1*(x0^2 - x1^2)*(x0^2 + x1^2)"),
    _binary("(x0^2 - x1^2)*(4*(x0^2 - x1^2)^2 - 3*(x0^2 + x1^2)^2)"),
    _binary("(x0^2 + x1^2)^3"),
)


def segre():
    return VarietySpec(4, HYPERSURFACE, [SEGRE], name="segre")


def sphere():
    return VarietySpec(4, HYPERSURFACE, [SPHERE], name="sphere")


def torus():
    return VarietySpec(4, HYPERSURFACE, [TORUS], name="torus")


def quartic():
    return VarietySpec(4, HYPERSURFACE, [QUARTIC], name="quartic")


def trott():
    return VarietySpec(3, HYPERSURFACE, [TROTT], name="trott")


def two_circles():
    return VarietySpec(3, HYPERSURFACE, [TWO_CIRCLES], name="two_circles")


def circle():
    return VarietySpec(3, HYPERSURFACE, [CIRCLE], name="circle")


def sextic_curve(with_parametrization=True):
    par = SEXTIC_PARAMETRIZATION if with_parametrization else None
    return VarietySpec(4, CI_CURVE, list(SEXTIC_CURVE), parametrization=par, name="sextic_curve")


NAMED = {
    "segre": segre,
    "sphere": sphere,
    "torus": torus,
    "quartic": quartic,
    "trott": trott,
    "two_circles": two_circles,
    "circle": circle,
    "sextic_curve": sextic_curve,
}


def named(name):
    try:
        return NAMED[name]()
    except KeyError:
        from .poly import InputError
        raise InputError(f"unknown named variety {name!r}") from None

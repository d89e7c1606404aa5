# -*- coding: utf-8 -*-


"""Closed form kernels, Green functions and bound envelopes

All functions broadcast over numpy arrays. The boundary factor 1 - e^{-r}
is always evaluated as -expm1(-r): near the Dirichlet boundary x*y << t and
the plain difference cancels.
"""


import collections
import logging
import math

import numpy as np
from scipy import special

import hlk
from hlk import const
from hlk import grid as grid_quad


log = logging.getLogger('hlk-closed-form')


EnvelopeParams = collections.namedtuple('EnvelopeParams', ['c', 'kind', 'd'])
EnvelopeParams.__new__.__defaults__ = ('main', 1)

ResolventParams = collections.namedtuple('ResolventParams', ['lam', 'xi'])


def _positive(name, value):
    value = np.asarray(value, dtype=float)
    if not np.all(value > 0):
        raise hlk.InvalidArgument('{} must be positive'.format(name))
    return value


def resolvent_params(lam, xi=0.):
    """Return ResolventParams, checking lam > xi^2"""
    if not lam > xi ** 2:
        raise hlk.InvalidArgument(
            'Resolvent needs lambda > xi^2, got lambda={} xi={}'.format(
                lam, xi))
    return ResolventParams(float(lam), float(xi))


def boundary_factor(t, x, y):
    """1 - exp(-x y / t)"""
    return -np.expm1(-x * y / t)


def free_heat_kernel(t, x, y, d=1):
    """Gaussian (4 pi t)^{-d/2} exp(-|x - y|^2 / 4t)

    .. versionadded:: 0.1

    >>> from hlk import closed_form
    >>> round(float(closed_form.free_heat_kernel(1., 1., 1.)), 8)
    0.28209479
    """
    t = _positive('t', t)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return (4. * math.pi * t) ** (-0.5 * d) * np.exp(-(x - y) ** 2 / (4. * t))


def dirichlet_kernel(t, x, y):
    """Dirichlet heat kernel of the half-line

    .. versionadded:: 0.1

    k_t(x, y) = (4 pi t)^{-1/2} e^{-(x-y)^2/4t} (1 - e^{-xy/t})
    """
    t = _positive('t', t)
    x = _positive('x', x)
    y = _positive('y', y)
    return free_heat_kernel(t, x, y) * boundary_factor(t, x, y)


def sandwich_bounds(t, x, y):
    """Return (lower, upper) with lower <= k_t(x, y) <= upper

    .. versionadded:: 0.1

    lower = 1/2 (1 ^ xy/t) g_t(x - y) and upper = (1 ^ xy/t) g_t(x - y),
    g_t being the free Gaussian.
    """
    t = _positive('t', t)
    x = _positive('x', x)
    y = _positive('y', y)
    bracket = np.minimum(1., x * y / t) * free_heat_kernel(t, x, y)
    return 0.5 * bracket, bracket


def green_function(lam, x, y):
    """Dirichlet resolvent kernel of (lam - d^2/dx^2) on the half-line

    .. versionadded:: 0.1

    With s = sqrt(lam),
    G(x, y) = e^{-s|x-y|} (1 - e^{-2 s min(x, y)}) / 2s
    """
    lam = _positive('lambda', lam)
    x = _positive('x', x)
    y = _positive('y', y)
    root = np.sqrt(lam)
    return (np.exp(-root * np.abs(x - y)) *
            -np.expm1(-2. * root * np.minimum(x, y)) / (2. * root))


def weighted_green(params, x, y):
    """e^{xi (x - y)} G_lam(x, y), the kernel of the conjugated resolvent"""
    x = _positive('x', x)
    y = _positive('y', y)
    root = math.sqrt(params.lam)
    return (np.exp(params.xi * (x - y) - root * np.abs(x - y)) *
            -np.expm1(-2. * root * np.minimum(x, y)) / (2. * root))


def weighted_kernel(xi, t, x, y):
    """e^{xi (x - y)} k_t(x, y)

    The exponents are combined before exponentiation so that large xi * L
    does not overflow next to a vanishing Gaussian.
    """
    t = _positive('t', t)
    x = _positive('x', x)
    y = _positive('y', y)
    exponent = xi * (x - y) - (x - y) ** 2 / (4. * t)
    return ((4. * math.pi * t) ** -0.5 * np.exp(exponent) *
            boundary_factor(t, x, y))


def survival_probability(t, x):
    """Probability that Brownian motion from x (generator the Laplacian)
    is not absorbed at 0 before time t: erf(x / sqrt(4t))"""
    t = _positive('t', t)
    x = _positive('x', x)
    return special.erf(x / np.sqrt(4. * t))


def envelope(kind, params, t, x, y):
    """Evaluate a kernel bound envelope

    .. versionadded:: 0.1

    :param kind: One of exponential, boundary, main, sandwich_lower,
                 sandwich_upper, boundary_sharp; None uses params.kind
    :param params: EnvelopeParams (c, kind, d)

    With g = e^{-(x-y)^2/4t}, P = (1 + (x-y)^2/4t)^{d/2+1} and r = xy/t:

    * exponential: c t^{-d/2} g
    * boundary: c x y t^{-(d/2+1)} P g
    * main: c (1 ^ r P) t^{-d/2} g
    * boundary_sharp: c (1 ^ r) t^{-d/2} g
    * sandwich_lower / sandwich_upper: c/2 (1 ^ r) and c (1 ^ r) times
      the free Gaussian
    """
    kind = params.kind if kind is None else kind
    if kind not in const.ENVELOPE_KINDS:
        raise hlk.InvalidArgument('Unknown envelope kind {!r}'.format(kind))
    if not params.c > 0:
        raise hlk.InvalidArgument('Envelope constant must be positive')
    t = _positive('t', t)
    x = _positive('x', x)
    y = _positive('y', y)
    d = params.d
    quotient = (x - y) ** 2 / (4. * t)
    gaussian = np.exp(-quotient)
    polynomial = (1. + quotient) ** (0.5 * d + 1.)
    ratio = x * y / t
    if kind == 'exponential':
        return params.c * t ** (-0.5 * d) * gaussian
    if kind == 'boundary':
        return (params.c * x * y * t ** (-(0.5 * d + 1.)) * polynomial *
                gaussian)
    if kind == 'main':
        return (params.c * np.minimum(1., ratio * polynomial) *
                t ** (-0.5 * d) * gaussian)
    if kind == 'boundary_sharp':
        return params.c * np.minimum(1., ratio) * t ** (-0.5 * d) * gaussian
    free = free_heat_kernel(t, x, y, d)
    if kind == 'sandwich_lower':
        return 0.5 * params.c * np.minimum(1., ratio) * free
    return params.c * np.minimum(1., ratio) * free


def closed_form_kernel(t, grid):
    """KernelMatrix of the Dirichlet heat kernel on *grid*"""
    points = grid.points
    values = dirichlet_kernel(t, points[:, np.newaxis],
                              points[np.newaxis, :])
    return grid_quad.KernelMatrix(float(t), grid, values,
                                  const.METHOD_CLOSED_FORM, 0.)

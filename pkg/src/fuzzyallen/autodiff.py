"""A small reverse-mode differentiation tape for scalar computations.

Every operation on a :class:`DiffScalar` appends one node to its
:class:`Tape` holding the parent node ids and the local partial derivatives.
Node ids grow monotonically, so a single reverse sweep over the node list
visits the graph in reverse topological order.

A tape is not thread-safe; use one tape per optimisation run.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np


class Tape:
    def __init__(self):
        self._parents: list[tuple[int, ...]] = []
        self._partials: list[tuple[float, ...]] = []
        self.adjoints: np.ndarray | None = None

    def __len__(self):
        return len(self._parents)

    def variable(self, value) -> "DiffScalar":
        """A new independent input."""
        return self._push(float(value), (), ())

    def variables(self, values: Sequence[float]) -> list["DiffScalar"]:
        return [self.variable(v) for v in values]

    def record(self, value, parents, partials) -> "DiffScalar":
        """Append a node whose derivative w.r.t. ``parents[k]`` is ``partials[k]``.

        Parents that are plain numbers are treated as constants and dropped.
        """
        ids, grads = [], []
        for parent, grad in zip(parents, partials):
            if isinstance(parent, DiffScalar):
                if parent.tape is not self:
                    raise ValueError("cannot mix values from different tapes")
                ids.append(parent.index)
                grads.append(float(grad))
        return self._push(float(value), tuple(ids), tuple(grads))

    def _push(self, value, ids, grads):
        self._parents.append(ids)
        self._partials.append(grads)
        return DiffScalar(value, self, len(self._parents) - 1)

    def backward(self, output: "DiffScalar") -> np.ndarray:
        """Adjoint of ``output`` w.r.t. every node; also stored on ``self.adjoints``."""
        if not isinstance(output, DiffScalar) or output.tape is not self:
            raise ValueError("output is not a node of this tape")
        adj = np.zeros(output.index + 1)
        adj[output.index] = 1.0
        for i in range(output.index, -1, -1):
            g = adj[i]
            if g == 0.0:
                continue
            for j, local in zip(self._parents[i], self._partials[i]):
                adj[j] += g * local
        full = np.zeros(len(self))
        full[: len(adj)] = adj
        self.adjoints = full
        return full

    def gradient(self, output: "DiffScalar", wrt: Sequence["DiffScalar"]) -> np.ndarray:
        adj = self.backward(output)
        return np.array([adj[v.index] for v in wrt])


class DiffScalar:
    """A float that records the operations applied to it."""

    __slots__ = ("value", "tape", "index")
    __array_priority__ = 100

    def __init__(self, value: float, tape: Tape, index: int):
        self.value = value
        self.tape = tape
        self.index = index

    @property
    def adjoint(self) -> float:
        adj = self.tape.adjoints
        if adj is None or self.index >= len(adj):
            return 0.0
        return float(adj[self.index])

    def __repr__(self):
        return f"DiffScalar({self.value!r}, node={self.index})"

    def __float__(self):
        return self.value

    # arithmetic

    def __add__(self, other):
        return self.tape.record(self.value + _val(other), (self, other), (1.0, 1.0))

    __radd__ = __add__

    def __sub__(self, other):
        return self.tape.record(self.value - _val(other), (self, other), (1.0, -1.0))

    def __rsub__(self, other):
        return self.tape.record(_val(other) - self.value, (other, self), (1.0, -1.0))

    def __mul__(self, other):
        o = _val(other)
        return self.tape.record(self.value * o, (self, other), (o, self.value))

    def __rmul__(self, other):
        o = _val(other)
        return self.tape.record(o * self.value, (other, self), (self.value, o))

    def __truediv__(self, other):
        o = _val(other)
        q = self.value / o
        # -q / o rather than -v / o**2: the square underflows for tiny divisors
        return self.tape.record(q, (self, other), (1.0 / o, -q / o))

    def __rtruediv__(self, other):
        o = _val(other)
        v = self.value
        q = o / v
        return self.tape.record(q, (other, self), (1.0 / v, -q / v))

    def __neg__(self):
        return self.tape.record(-self.value, (self,), (-1.0,))

    def __pos__(self):
        return self

    def __abs__(self):
        v = self.value
        return self.tape.record(abs(v), (self,), (1.0 if v > 0 else -1.0 if v < 0 else 0.0,))

    # comparisons act on the value; __hash__ stays identity-based

    def __eq__(self, other):
        return self.value == _val(other)

    def __ne__(self, other):
        return self.value != _val(other)

    def __lt__(self, other):
        return self.value < _val(other)

    def __le__(self, other):
        return self.value <= _val(other)

    def __gt__(self, other):
        return self.value > _val(other)

    def __ge__(self, other):
        return self.value >= _val(other)

    __hash__ = object.__hash__


def _val(x) -> float:
    return x.value if isinstance(x, DiffScalar) else float(x)


def value(x) -> float:
    """Plain float value of a number or a DiffScalar."""
    return _val(x)


def exp(x):
    if isinstance(x, DiffScalar):
        e = math.exp(x.value)
        return x.tape.record(e, (x,), (e,))
    return math.exp(x)


def sigmoid_value(z: float) -> float:
    """Logistic function evaluated without overflow."""
    if z >= 0:
        return 1.0 / (1.0 + math.exp(-z))
    e = math.exp(z)
    return e / (1.0 + e)


def sigmoid(x):
    s = sigmoid_value(_val(x))
    if isinstance(x, DiffScalar):
        return x.tape.record(s, (x,), (s * (1.0 - s),))
    return s


def softplus_value(x: float, beta: float = 1.0) -> float:
    """``log(1 + exp(beta x)) / beta`` without overflow or loss of tiny values."""
    z = beta * x
    if z > 30.0:
        return (z + math.log1p(math.exp(-z))) / beta
    return math.log1p(math.exp(z)) / beta


def softplus(x, beta: float = 1.0):
    """Softplus with temperature ``beta``; its derivative is ``sigmoid(beta x)``."""
    v = softplus_value(_val(x), beta)
    if isinstance(x, DiffScalar):
        return x.tape.record(v, (x,), (sigmoid_value(beta * x.value),))
    return v


def straight_through(forward, surrogate):
    """Node whose value is ``forward`` but whose gradient is that of ``surrogate``."""
    if isinstance(surrogate, DiffScalar):
        return surrogate.tape.record(_val(forward), (surrogate,), (1.0,))
    return _val(forward)


def clamp01(x):
    """Clip to ``[0, 1]``; the gradient passes through unchanged."""
    v = _val(x)
    c = min(max(v, 0.0), 1.0)
    if c == v:
        return x
    return straight_through(c, x)

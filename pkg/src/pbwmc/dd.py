"""Reduced ordered algebraic decision diagrams.

A :class:`Manager` owns a node store shared by every diagram built in one
counting run.  Diagrams are int handles into that store; because nodes are
hash-consed, two handles are equal exactly when they denote the same
function.  Terminal values are either exact ``Fraction`` or ``float``
depending on the manager's mode, never a mix.
"""
from __future__ import annotations

import math
import time
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

INF = math.inf


class OrderError(ValueError):
    """``ite`` called with children that do not sit below the new variable."""


class ResourceLimit(RuntimeError):
    """The node store outgrew the configured limit."""


class CountTimeout(RuntimeError):
    """The configured deadline passed."""


class Manager:
    """Node store, unique table and operation caches for one variable order.

    >>> m = Manager([1, 2])
    >>> f = m.ite(1, m.one, m.ite(2, m.one, m.zero))
    >>> m.evaluate(f, {1: 0, 2: 1})
    Fraction(1, 1)
    """

    def __init__(self, order: Sequence[int] = (), exact: bool = True,
                 max_nodes: Optional[int] = None, deadline: Optional[float] = None):
        self.exact = exact
        self.max_nodes = max_nodes
        self.deadline = deadline
        self._level: Dict[int, int] = {}
        self.order: List[int] = []
        # node fields, indexed by handle
        self._var: List[Optional[int]] = []
        self._lvl: List[float] = []
        self._hi: List[int] = []
        self._lo: List[int] = []
        self._val: list = []
        self._unique: Dict[Tuple[int, int, int], int] = {}
        self._terminals: dict = {}
        self._product_cache: Dict[Tuple[int, int], int] = {}
        self._sum_cache: Dict[Tuple[int, int], int] = {}
        self._support: Dict[int, frozenset] = {}
        self._size: Dict[int, int] = {}
        for v in order:
            self.declare(v)
        self.zero = self.terminal(0)
        self.one = self.terminal(1)

    # -- store ------------------------------------------------------------

    def declare(self, v: int) -> None:
        """Append ``v`` at the bottom of the variable order."""
        if v in self._level:
            raise ValueError(f"x{v} declared twice")
        self._level[v] = len(self.order)
        self.order.append(v)

    def level(self, v: int) -> int:
        return self._level[v]

    def __len__(self) -> int:
        return len(self._var)

    def _new(self, var, lvl, hi, lo, val) -> int:
        n = len(self._var)
        if self.max_nodes is not None and n >= self.max_nodes:
            raise ResourceLimit(f"more than {self.max_nodes} diagram nodes")
        if self.deadline is not None and n % 1024 == 0 and time.monotonic() > self.deadline:
            raise CountTimeout("deadline passed while building diagrams")
        self._var.append(var)
        self._lvl.append(lvl)
        self._hi.append(hi)
        self._lo.append(lo)
        self._val.append(val)
        return n

    def coerce(self, value):
        if self.exact:
            return value if isinstance(value, Fraction) else Fraction(value)
        # -0.0 and 0.0 share one terminal
        return float(value) + 0.0

    def terminal(self, value) -> int:
        value = self.coerce(value)
        node = self._terminals.get(value)
        if node is None:
            node = self._new(None, INF, -1, -1, value)
            self._terminals[value] = node
        return node

    def _make(self, v: int, hi: int, lo: int) -> int:
        if hi == lo:
            return hi
        key = (v, hi, lo)
        node = self._unique.get(key)
        if node is None:
            node = self._new(v, self._level[v], hi, lo, None)
            self._unique[key] = node
        return node

    def ite(self, v: int, hi: int, lo: int) -> int:
        """The node testing ``v`` with 1-edge ``hi`` and 0-edge ``lo``."""
        if v not in self._level:
            raise OrderError(f"x{v} is not in the variable order")
        lv = self._level[v]
        if self._lvl[hi] <= lv or self._lvl[lo] <= lv:
            raise OrderError(f"children of x{v} must test later variables only")
        return self._make(v, hi, lo)

    # -- inspection -------------------------------------------------------

    def is_terminal(self, f: int) -> bool:
        return self._var[f] is None

    def value(self, f: int):
        if self._var[f] is not None:
            raise ValueError("not a terminal")
        return self._val[f]

    def var(self, f: int) -> Optional[int]:
        return self._var[f]

    def high(self, f: int) -> int:
        return self._hi[f]

    def low(self, f: int) -> int:
        return self._lo[f]

    def support(self, f: int) -> frozenset:
        """Variables tested somewhere in ``f``."""
        s = self._support.get(f)
        if s is None:
            if self._var[f] is None:
                s = frozenset()
            else:
                s = self.support(self._hi[f]) | self.support(self._lo[f]) | {self._var[f]}
            self._support[f] = s
        return s

    def descendants(self, f: int) -> set:
        seen = set()
        stack = [f]
        while stack:
            u = stack.pop()
            if u in seen:
                continue
            seen.add(u)
            if self._var[u] is not None:
                stack.append(self._hi[u])
                stack.append(self._lo[u])
        return seen

    def node_count(self, f: int) -> int:
        """Distinct nodes reachable from ``f``, terminals included."""
        n = self._size.get(f)
        if n is None:
            n = self._size[f] = len(self.descendants(f))
        return n

    def evaluate(self, f: int, assignment: Mapping[int, int]):
        u = f
        while self._var[u] is not None:
            v = self._var[u]
            if v not in assignment:
                raise ValueError(f"x{v} is unassigned")
            u = self._hi[u] if assignment[v] else self._lo[u]
        return self._val[u]

    # -- apply ------------------------------------------------------------

    def _cofactors(self, f: int, lvl: float) -> Tuple[int, int]:
        if self._lvl[f] == lvl:
            return self._hi[f], self._lo[f]
        return f, f

    def product(self, f: int, g: int) -> int:
        """Pointwise product ``f * g``."""
        zero, one = self.zero, self.one
        if f == zero or g == zero:
            return zero
        if f == one:
            return g
        if g == one:
            return f
        if f > g:
            f, g = g, f
        key = (f, g)
        r = self._product_cache.get(key)
        if r is not None:
            return r
        lf, lg = self._lvl[f], self._lvl[g]
        if lf == INF and lg == INF:
            r = self.terminal(self._val[f] * self._val[g])
        else:
            top = min(lf, lg)
            f1, f0 = self._cofactors(f, top)
            g1, g0 = self._cofactors(g, top)
            v = self._var[f] if lf == top else self._var[g]
            r = self._make(v, self.product(f1, g1), self.product(f0, g0))
        self._product_cache[key] = r
        return r

    def sum(self, f: int, g: int) -> int:
        """Pointwise sum ``f + g``."""
        zero = self.zero
        if f == zero:
            return g
        if g == zero:
            return f
        if f > g:
            f, g = g, f
        key = (f, g)
        r = self._sum_cache.get(key)
        if r is not None:
            return r
        lf, lg = self._lvl[f], self._lvl[g]
        if lf == INF and lg == INF:
            r = self.terminal(self._val[f] + self._val[g])
        else:
            top = min(lf, lg)
            f1, f0 = self._cofactors(f, top)
            g1, g0 = self._cofactors(g, top)
            v = self._var[f] if lf == top else self._var[g]
            r = self._make(v, self.sum(f1, g1), self.sum(f0, g0))
        self._sum_cache[key] = r
        return r

    def scale(self, f: int, c) -> int:
        return self.product(f, self.terminal(c))

    def project(self, f: int, x: int, pos_weight=1, neg_weight=1) -> int:
        """Sum ``x`` out of ``f * W_x``: ``pos_weight * f|x=1 + neg_weight * f|x=0``.

        When ``x`` does not occur in ``f`` this is ``f`` scaled by
        ``pos_weight + neg_weight``.
        """
        lx = self._level[x]
        pos_weight = self.coerce(pos_weight)
        neg_weight = self.coerce(neg_weight)
        total = self.terminal(pos_weight + neg_weight)
        memo: Dict[int, int] = {}

        def rec(u: int) -> int:
            lu = self._lvl[u]
            if lu > lx:
                return self.product(u, total)
            r = memo.get(u)
            if r is None:
                if lu == lx:
                    r = self.sum(self.scale(self._hi[u], pos_weight),
                                 self.scale(self._lo[u], neg_weight))
                else:
                    r = self._make(self._var[u], rec(self._hi[u]), rec(self._lo[u]))
                memo[u] = r
            return r

        return rec(f)

    # -- paths ------------------------------------------------------------

    def zero_paths(self, f: int, step: Optional[Callable] = None, state=None) -> Iterator[Tuple[Tuple[int, ...], object]]:
        """Depth-first enumeration of root-to-0 paths of a 0/1 diagram.

        Yields ``(literals, state)`` per path.  If ``step`` is given it is
        called as ``step(state, literal)`` on every edge taken and returns
        the state for the subtree, or ``None`` to prune that subtree.
        """
        zero, one = self.zero, self.one
        path: List[int] = []

        def walk(u, st):
            if u == zero:
                yield tuple(path), st
                return
            if u == one or self._var[u] is None:
                return
            v = self._var[u]
            for child, lit in ((self._hi[u], v), (self._lo[u], -v)):
                if child == one:
                    continue
                nxt = st if step is None else step(st, lit)
                if step is not None and nxt is None:
                    continue
                path.append(lit)
                yield from walk(child, nxt)
                path.pop()

        yield from walk(f, state)

    def to_dot(self, f: int, name: str = "add") -> str:
        """Graphviz source; dashed edges are 0-edges."""
        lines = [f"digraph {name} {{"]
        for u in sorted(self.descendants(f)):
            if self._var[u] is None:
                lines.append(f'  n{u} [shape=box, label="{self._val[u]}"];')
            else:
                lines.append(f'  n{u} [label="x{self._var[u]}"];')
                lines.append(f"  n{u} -> n{self._hi[u]};")
                lines.append(f"  n{u} -> n{self._lo[u]} [style=dashed];")
        lines.append("}")
        return "\n".join(lines) + "\n"

"""Extremality testing for grid functions.

A minimal function is extreme when it is not the midpoint of two distinct
minimal functions. At grid order q that reduces to three checks: minimality,
being a vertex of the minimal-function polytope (the additivity relations
that hold at the function pin it down), and all q intervals being covered
by the additivity complex.
"""

from typing import NamedTuple

from .complex2d import covered_components, painting_from_function
from .grid_functions import FunctionError, is_minimal, restrict
from .linalg import matrix_rank
from .polyhedra import symmetry_pairs


class ExtremalityResult(NamedTuple):
    extreme: bool
    minimal: bool
    vertex: bool
    covered: bool
    uncovered_intervals: tuple


def _certifying_rows(fn):
    """Equality rows pinning fn, over value variables 1..q-1 (pi_0 fixed)."""
    q = fn.q
    rows = []
    for pair in symmetry_pairs(q, fn.f_index):
        row = [0] * (q - 1)
        for x in pair:
            if x:
                row[x - 1] += 1
        if len(pair) == 1:
            x = next(iter(pair))
            if x:
                row[x - 1] = 2
        if any(row):
            rows.append(row)
    for x in range(q):
        for y in range(x, q):
            if fn.delta(x, y) != 0:
                continue
            row = [0] * (q - 1)
            for idx, c in ((x, 1), (y, 1), ((x + y) % q, -1)):
                if idx:
                    row[idx - 1] += c
            if any(row):
                rows.append(row)
    return rows


def is_polytope_vertex(fn):
    """Whether the equalities tight at fn determine it uniquely."""
    q = fn.q
    rows = _certifying_rows(fn)
    return matrix_rank(rows, q - 1, stop_at=q - 1) == q - 1


def oversampling_vertex_test(fn, m):
    """Vertex test for the restriction of fn's interpolation to 1/(mq).

    For m >= 3 this decides extremality of the interpolation, so it serves
    as an independent oracle for is_extreme.
    """
    if m < 1:
        raise FunctionError("oversampling factor must be at least 1")
    return is_polytope_vertex(restrict(fn, m))


def is_extreme(fn):
    """Full extremality test with a certificate of what failed.

    extreme holds iff fn is minimal, is a vertex of the minimal-function
    polytope, and its additivity painting covers every interval.
    """
    minimal = is_minimal(fn)
    vertex = is_polytope_vertex(fn)
    partition = covered_components(painting_from_function(fn))
    covered = partition.all_covered()
    uncovered = tuple(sorted(partition.uncovered_intervals()))
    return ExtremalityResult(
        extreme=minimal and vertex and covered,
        minimal=minimal,
        vertex=vertex,
        covered=covered,
        uncovered_intervals=uncovered,
    )

"""Constructions and checks for triple arrays and sesqui-arrays.

Modules
-------
arrays
    Letter arrays, incidence matrices, conditions A0-A4, exact rank.
designs
    Block designs, development over abelian groups, isomorphism.
latin
    (n+1) x n^2 sesqui-arrays from Latin squares.
sylvester
    Hoffman-Singleton / Sylvester graphs, the 36-point design and 7 x 36 array.
biplane
    Hussain chains and K x (V-K) arrays from biplanes.
optimality
    Canonical efficiency factors, A/D/E summaries, combined designs.
"""

from .arrays import (
    Classification,
    IncidenceSummary,
    IntegerMatrix,
    Kind,
    LetterArray,
    check_conditions,
    check_rank_inequalities,
    column_histogram,
    format_array,
    parse_array,
    rank_exact,
    summarize,
)
from .designs import (
    AbelianGroup,
    BlockDesign,
    Iso,
    ParallelClassPartition,
    are_isomorphic,
    concurrence_matrix,
    develop,
    dual,
    is_difference_set,
    shipped_biplane_design,
    verify_parallel_partition,
)
from .kernels import BACKEND

__version__ = "0.1.0"

"""Known small arrays and designs used as verifier fixtures.

Each array is given as rows of letter tokens and converted with
:func:`from_rows`, which numbers letters in alphabetical order.
"""

from __future__ import annotations

from .arrays import LetterArray
from .designs import AbelianGroup, BlockDesign, develop


def from_rows(rows: str) -> LetterArray:
    grid = [line.split() for line in rows.strip().splitlines()]
    names = sorted({t for row in grid for t in row})
    ids = {t: i for i, t in enumerate(names)}
    return LetterArray(tuple(tuple(ids[t] for t in row) for row in grid), len(names), tuple(names))


# 5 x 6 triple array, v = 10
TA_5X6 = """
A F C D H J
B A I J E H
C H G B I D
D G A I F E
E B J F C G
"""

# 3 x 4 double array, v = 6
DA_3X4 = """
A B C D
F A B E
C D E F
"""

# 4 x 6 sesqui-array, v = 8
SA_4X6 = """
A H B G C F
B G F C E D
C F E D A H
D E A H G B
"""

# 5 x 8 sesqui-array, v = 20
SA_5X8 = """
A F G H E P R K
I B K L S J H M
M N C P L Q O F
Q R S D N G I T
E J O T A B C D
"""

# 3 x 4 output of the Latin-square construction with n = 2
LATIN_N2 = """
E F A B
B A C D
C D E F
"""

# 5 x 16 output of the Latin-square construction with n = 4
LATIN_N4 = """
A B C D E F G H I J K L M N O P
Q R S T D A B C E F G H I J K L
M N O P Q R S T C D A B E F G H
I J K L M N O P Q R S T B C D A
E F G H I J K L M N O P Q R S T
"""

# 4 x 9 triple array, v = 12
TA_4X9 = """
D H F L E K I G J
A K I B J G C L H
J A L D B F K E C
G E A H I B D C F
"""


NAMED = {
    "ta-5x6": TA_5X6,
    "da-3x4": DA_3X4,
    "sa-4x6": SA_4X6,
    "sa-5x8": SA_5X8,
    "latin-n2": LATIN_N2,
    "latin-n4": LATIN_N4,
    "ta-4x9": TA_4X9,
}


def fixture(name: str) -> LetterArray:
    return from_rows(NAMED[name])


def six_point_design() -> BlockDesign:
    """Six points, eight blocks of size three: {1,2,5} and {1,3,5} mod 6."""
    return develop([(1, 2, 5), (1, 3, 5)], AbelianGroup((6,)))

"""Known-good connectivity matrices for small boundaries, keyed by partition
label so tests can compare entries independently of the order an
implementation picks."""

from fractions import Fraction

N2_ORDER = ["1|2", "12"]
N2_A = [
    [0, 1],
    [1, 1],
]
N2_A_INV = [
    [-1, 1],
    [1, 0],
]

N3_ORDER = ["1|2|3", "1|23", "13|2", "12|3", "123"]
N3_A = [
    [0, 0, 0, 0, 1],
    [0, 0, 1, 1, 1],
    [0, 1, 0, 1, 1],
    [0, 1, 1, 0, 1],
    [1, 1, 1, 1, 1],
]
N3_A_INV_NUM = [
    [1, -1, -1, -1, 2],
    [-1, -1, 1, 1, 0],
    [-1, 1, -1, 1, 0],
    [-1, 1, 1, -1, 0],
    [2, 0, 0, 0, 0],
]
N3_A_INV_DEN = 2
N3_B = [
    [1, 0, 0, 0, 0],
    [-1, 1, 0, 0, 0],
    [-1, 0, 1, 0, 0],
    [-1, 0, 0, 1, 0],
    [2, -1, -1, -1, 1],
]
N3_C_DIAG = [Fraction(1, 2), Fraction(-1), Fraction(-1), Fraction(-1), Fraction(1)]
N3_D = [
    [1, -1, -1, -1, 2],
    [0, 1, 0, 0, -1],
    [0, 0, 1, 0, -1],
    [0, 0, 0, 1, -1],
    [0, 0, 0, 0, 1],
]

N4_ORDER = [
    "1|2|3|4",
    "1|2|34",
    "1|24|3",
    "14|2|3",
    "1|23|4",
    "13|2|4",
    "12|3|4",
    "14|23",
    "13|24",
    "12|34",
    "1|234",
    "134|2",
    "124|3",
    "123|4",
    "1234",
]
N4_A = [
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 1, 1, 1],
    [0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 0, 1, 0, 1, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 0, 0, 1, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 1, 0, 1],
    [0, 0, 0, 0, 0, 0, 0, 1, 0, 1, 1, 0, 1, 0, 1],
    [0, 0, 0, 0, 0, 0, 0, 1, 1, 0, 1, 1, 0, 0, 1],
    [0, 1, 1, 0, 0, 1, 1, 0, 1, 1, 1, 1, 1, 1, 1],
    [0, 1, 0, 1, 1, 0, 1, 1, 0, 1, 1, 1, 1, 1, 1],
    [0, 0, 1, 1, 1, 1, 0, 1, 1, 0, 1, 1, 1, 1, 1],
    [0, 0, 0, 1, 0, 1, 1, 1, 1, 1, 0, 1, 1, 1, 1],
    [0, 0, 1, 0, 1, 0, 1, 1, 1, 1, 1, 0, 1, 1, 1],
    [0, 1, 0, 0, 1, 1, 0, 1, 1, 1, 1, 1, 0, 1, 1],
    [0, 1, 1, 1, 0, 0, 0, 1, 1, 1, 1, 1, 1, 0, 1],
    [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1],
]
N4_A_INV_NUM = [
    [-1, 1, 1, 1, 1, 1, 1, -1, -1, -1, -2, -2, -2, -2, 6],
    [1, 2, -1, -1, -1, -1, -1, 1, 1, -2, -1, -1, 2, 2, 0],
    [1, -1, 2, -1, -1, -1, -1, 1, -2, 1, -1, 2, -1, 2, 0],
    [1, -1, -1, 2, -1, -1, -1, -2, 1, 1, 2, -1, -1, 2, 0],
    [1, -1, -1, -1, 2, -1, -1, -2, 1, 1, -1, 2, 2, -1, 0],
    [1, -1, -1, -1, -1, 2, -1, 1, -2, 1, 2, -1, 2, -1, 0],
    [1, -1, -1, -1, -1, -1, 2, 1, 1, -2, 2, 2, -1, -1, 0],
    [-1, 1, 1, -2, -2, 1, 1, -1, -1, -1, 1, 1, 1, 1, 0],
    [-1, 1, -2, 1, 1, -2, 1, -1, -1, -1, 1, 1, 1, 1, 0],
    [-1, -2, 1, 1, 1, 1, -2, -1, -1, -1, 1, 1, 1, 1, 0],
    [-2, -1, -1, 2, -1, 2, 2, 1, 1, 1, -1, -1, -1, -1, 0],
    [-2, -1, 2, -1, 2, -1, 2, 1, 1, 1, -1, -1, -1, -1, 0],
    [-2, 2, -1, -1, 2, 2, -1, 1, 1, 1, -1, -1, -1, -1, 0],
    [-2, 2, 2, 2, -1, -1, -1, 1, 1, 1, -1, -1, -1, -1, 0],
    [6, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0],
]
N4_A_INV_DEN = 6

# orbit census for n=5: (#members, block count) per relabeling class
N5_ORBITS = [(1, 5), (10, 4), (15, 3), (10, 3), (5, 2), (10, 2), (1, 1)]

"""Small hand-written tensors shared by several test modules."""
import numpy as np


def slices(*ss):
    """(n, n, p) int array from p frontal slices."""
    return np.moveaxis(np.array(ss, dtype=np.int64), 0, -1)


# Small tensors used across modules, written out as frontal slices.
TWO_CYCLE_SPLIT = slices([[0, 1], [0, 0]], [[0, 0], [1, 0]])
ONE_EDGE = slices([[0, 1], [0, 0]], [[0, 0], [0, 0]])
THREE_CYCLE = slices([[0, 1, 0], [0, 0, 0], [0, 0, 0]],
                     [[0, 0, 0], [0, 0, 1], [0, 0, 0]],
                     [[0, 0, 0], [0, 0, 0], [1, 0, 0]])
THREE_PATH = slices([[0, 1, 0], [0, 0, 0], [0, 0, 0]],
                    [[0, 0, 0], [0, 0, 1], [0, 0, 0]],
                    [[0, 0, 0], [0, 0, 0], [0, 0, 0]])
SWAP = slices([[0, 0], [0, 0]], [[0, 1], [1, 0]])

"""
Types and type aliases for dfsloss
"""
from typing import Iterable, Tuple, Union
import numpy as np

# an explicit seed or an already seeded generator (there is no global RNG in dfsloss)
Seed = Union[int, np.random.Generator]
# sites are numbered from 1 (site 1 is the most significant digit of a basis index)
Sites = Iterable[int]
Pairing = Iterable[Tuple[int, int]]
# four ports, port p receives photon routing[p - 1]
Routing = Tuple[int, int, int, int]

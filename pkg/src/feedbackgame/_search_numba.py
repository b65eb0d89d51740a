"""Numba-compiled variants of the search kernels.

Importing this module requires numba but does not trigger compilation;
that happens on first call and is cached on disk by ``cache=True``.
"""

from numba import njit

from . import _search

win_search = njit(cache=True)(_search.win_search)
length_search = njit(cache=True)(_search.length_search)

"""Shared seeded builders for the test suite."""

import numpy as np

from normlog.harness import Stream, random_unitary
from normlog.linalg import dagger


def random_hermitian(n, seed, scale=1.0):
    g = Stream(seed).complex_gaussian_matrix(n)
    return scale * (g + dagger(g)) / 2


def random_normal_matrix(n, seed, re_range=2.0, im_range=2.0, min_gap=1e-4):
    """Random normal matrix with eigenvalues in a centered box.

    Eigenvalues are pairwise separated by ``min_gap`` so decompositions
    cluster them the intended way.
    """
    stream = Stream(seed)
    eigs = []
    while len(eigs) < n:
        z = complex(stream.uniform(-re_range, re_range),
                    stream.uniform(-im_range, im_range))
        if all(abs(z - w) >= min_gap for w in eigs):
            eigs.append(z)
    u = random_unitary(n, stream.subseed())
    return u @ np.diag(eigs) @ dagger(u), eigs, u

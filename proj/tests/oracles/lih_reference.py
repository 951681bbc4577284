# Copyright 2026 The vaqclab Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent dense-matrix oracle for the pinned LiH fixture values.

Builds each Pauli word with numpy Kronecker products (qubit 1 is the most
significant amplitude bit; word character i from the left acts on qubit
n + 1 - i), diagonalizes with numpy.linalg.eigh and prints the values that
tests/ freeze as constants.
"""
import sys
from functools import reduce

import numpy as np

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def load(path):
    terms = {}
    for line in open(path):
        line = line.split("#")[0].strip()
        if not line:
            continue
        c, w = line.split()
        terms[w] = terms.get(w, 0.0) + float(c)
    return terms


def matrix(terms):
    n = len(next(iter(terms)))
    m = np.zeros((2**n, 2**n), dtype=complex)
    for w, c in terms.items():
        m += c * reduce(np.kron, [PAULI[ch] for ch in reversed(w)])
    return m


def main(path):
    target = load(path)
    initial = {w: c for w, c in target.items()
               if w.count("I") == len(w) or (w.count("Z") == 1 and w.count("I") == len(w) - 1)}
    mt, mi = matrix(target), matrix(initial)
    ev = np.linalg.eigvalsh(mt)
    print(f"terms {len(target)}")
    print(f"lambda0 {ev[0]:.15f}")
    print(f"lambda1 {ev[1]:.15f}")
    evi, veci = np.linalg.eigh(mi)
    print(f"H_I lambda0 {evi[0]:.15f} ground index {np.argmax(abs(veci[:, 0]))}")
    gaps = []
    for k in range(21):
        t = k / 20
        e = np.linalg.eigvalsh((1 - t) * mi + t * mt)
        gaps.append((t, e[1] - e[0]))
    tmin, gmin = min(gaps, key=lambda x: x[1])
    print(f"min gap {gmin:.15f} at t={tmin}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/lih_2p5A.ham")

"""
Groupoid Lab Benchmarks
Generates CSV data for analysis
"""

import sys
import time
import csv
import random
from pathlib import Path

import numpy as np

sys.path.insert(0, 'src')

from cli.generators import random_element, random_hermitian
from cli.suite import case_specs, run_case
from groupoid_core.constructors import cyclic_group, pair_groupoid
from measure.haar import canonical_counting_haar
from spectra.eigen import bisection_eigenvalues, jacobi_eigh
from spectra.norms import reduced_norm

SEED = 42


def _save(rows, path):
    Path("outputs/metrics").mkdir(parents=True, exist_ok=True)
    with open(path, 'w', newline='') as f:
        writer = csv.DictWriter(f, fieldnames=rows[0].keys())
        writer.writeheader()
        writer.writerows(rows)
    print(f"  Saved: {path}\n")


def benchmark_eigensolvers():
    """Cyclic Jacobi vs Sturm bisection vs numpy.linalg.eigvalsh"""
    print("Running eigensolver benchmarks...")
    rng = random.Random(SEED)
    results = []

    for n in [4, 8, 12, 24, 48]:
        m = random_hermitian(rng, n)

        start = time.perf_counter()
        jacobi, sweeps = jacobi_eigh(m)
        jacobi_time = (time.perf_counter() - start) * 1000

        start = time.perf_counter()
        bisection = bisection_eigenvalues(m)
        bisection_time = (time.perf_counter() - start) * 1000

        start = time.perf_counter()
        reference = np.linalg.eigvalsh(m)
        numpy_time = (time.perf_counter() - start) * 1000

        results.append({
            'size': n,
            'jacobi_ms': round(jacobi_time, 3),
            'jacobi_sweeps': sweeps,
            'bisection_ms': round(bisection_time, 3),
            'numpy_ms': round(numpy_time, 3),
            'max_diff_bisection': f"{float(np.max(np.abs(np.sort(jacobi) - bisection))):.2e}",
            'max_diff_numpy': f"{float(np.max(np.abs(np.sort(jacobi) - reference))):.2e}",
        })
        print(f"  Size {n}: Jacobi {jacobi_time:.2f}ms ({sweeps} sweeps) vs numpy {numpy_time:.3f}ms")

    _save(results, 'outputs/metrics/eigensolvers.csv')
    return results


def benchmark_reduced_norm():
    """Reduced norm against fiber size"""
    print("Running reduced norm benchmarks...")
    rng = random.Random(SEED)
    results = []

    cases = [(pair_groupoid([str(i) for i in range(1, n + 1)], name=f"pair{n}"), n) for n in [2, 4, 6, 8, 12]]
    cases += [(cyclic_group(n), n) for n in [2, 4, 8, 16, 32]]
    for g, fiber in cases:
        haar = canonical_counting_haar(g)
        f = random_element(rng, haar)
        start = time.perf_counter()
        value = reduced_norm(f)
        elapsed = (time.perf_counter() - start) * 1000
        results.append({
            'groupoid': g.name,
            'elements': len(g),
            'units': len(g.units),
            'fiber_size': fiber,
            'time_ms': round(elapsed, 3),
            'norm': round(value, 9),
        })
        print(f"  {g.name:<12} fiber {fiber}: {elapsed:.2f}ms")

    _save(results, 'outputs/metrics/reduced_norm.csv')
    return results


def benchmark_verify(cases=8):
    """Per-property time of the random suite, run serially"""
    print("Running verification suite benchmarks...")
    totals = {}
    for spec in case_specs(SEED, cases):
        result = run_case(spec, minimize=False)
        for o in result.outcomes:
            entry = totals.setdefault(o.prop, {'property': o.prop, 'runs': 0, 'failures': 0, 'seconds': 0.0})
            entry['runs'] += 1
            entry['failures'] += 0 if o.passed else 1
            entry['seconds'] += o.seconds

    results = sorted(totals.values(), key=lambda r: -r['seconds'])
    for row in results:
        row['seconds'] = round(row['seconds'], 4)
    print(f"  {cases} cases, slowest property: {results[0]['property']} ({results[0]['seconds']:.2f}s)")

    _save(results, 'outputs/metrics/verify_properties.csv')
    return results


if __name__ == "__main__":
    print("\n" + "="*60)
    print("  GROUPOID LAB BENCHMARKS")
    print("="*60 + "\n")

    benchmark_eigensolvers()
    benchmark_reduced_norm()
    benchmark_verify()

    print("="*60)
    print("All benchmarks complete!")
    print("Check outputs/metrics/ for CSV files")
    print("="*60 + "\n")

"""
Groupoid Lab Analysis - Pure Data and Tables
Eigensolver comparison + norm scaling + suite cost
"""

import csv
from pathlib import Path
from datetime import datetime


def _read(path):
    with open(path, newline='') as f:
        return list(csv.DictReader(f))


def generate_lab_analysis():
    """Generate the analysis text from outputs/metrics"""

    eigen_data = _read('outputs/metrics/eigensolvers.csv')
    norm_data = _read('outputs/metrics/reduced_norm.csv')
    suite_data = _read('outputs/metrics/verify_properties.csv')

    report = []

    report.append("="*90)
    report.append(" "*32 + "GROUPOID LAB ANALYSIS")
    report.append(" "*35 + "Data Tables")
    report.append("="*90)
    report.append(f"\nGenerated: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}\n")

    # ========================================================================
    # TABLE 1: METHODS
    # ========================================================================

    report.append("\n" + "="*90)
    report.append("TABLE 1: NUMERICAL METHODS")
    report.append("="*90)
    report.append("")
    report.append(f"{'Method':<26} {'Cost':<22} {'Role':<40}")
    report.append("-"*90)
    report.append(f"{'Cyclic Jacobi':<26} {'O(n³) per sweep':<22} {'Eigenvalues behind every norm':<40}")
    report.append(f"{'Householder + Sturm':<26} {'O(n³) + O(n² log ε)':<22} {'Independent eigenvalue oracle':<40}")
    report.append(f"{'numpy.linalg.eigvalsh':<26} {'O(n³) (LAPACK)':<22} {'Benchmark baseline only':<40}")
    report.append(f"{'Reduced norm':<26} {'Σ_t O(|G_t|³)':<22} {'max_t ‖π_(l,t)(f)‖ over units':<40}")

    # ========================================================================
    # TABLE 2: EIGENSOLVERS
    # ========================================================================

    report.append("\n\n" + "="*90)
    report.append("TABLE 2: EIGENSOLVER AGREEMENT AND TIMING")
    report.append("="*90)
    report.append("")
    report.append(f"{'Size':<8} {'Jacobi (ms)':<13} {'Sweeps':<8} {'Bisection (ms)':<16} {'numpy (ms)':<12} "
                  f"{'Δ bisection':<12} {'Δ numpy':<12}")
    report.append("-"*90)

    worst = 0.0
    for row in eigen_data:
        report.append(f"{row['size']:<8} {row['jacobi_ms']:<13} {row['jacobi_sweeps']:<8} {row['bisection_ms']:<16} "
                      f"{row['numpy_ms']:<12} {row['max_diff_bisection']:<12} {row['max_diff_numpy']:<12}")
        worst = max(worst, float(row['max_diff_bisection']), float(row['max_diff_numpy']))

    report.append("")
    report.append(f"Worst disagreement: {worst:.2e}")
    report.append(f"Verification: eigenvalue agreement {'CONFIRMED' if worst <= 1e-8 else 'FAILED'} (≤ 1e-8)")

    # ========================================================================
    # TABLE 3: REDUCED NORM SCALING
    # ========================================================================

    report.append("\n\n" + "="*90)
    report.append("TABLE 3: REDUCED NORM VS FIBER SIZE")
    report.append("="*90)
    report.append("")
    report.append(f"{'Groupoid':<14} {'Elements':<10} {'Units':<8} {'Fiber':<8} {'Time (ms)':<12} "
                  f"{'Scaling':<12} {'‖f‖_red':<14}")
    report.append("-"*90)

    previous = {}
    for row in norm_data:
        family = row['groupoid'].rstrip('0123456789/')
        if family in previous:
            before = float(previous[family]['time_ms'])
            scaling = f"{float(row['time_ms'])/before:.2f}x" if before > 0 else "n/a"
        else:
            scaling = "baseline"
        previous[family] = row
        report.append(f"{row['groupoid']:<14} {row['elements']:<10} {row['units']:<8} {row['fiber_size']:<8} "
                      f"{row['time_ms']:<12} {scaling:<12} {row['norm']:<14}")

    report.append("")
    report.append("A group has one fiber of size |Γ|; the pair groupoid on n points has n fibers of size n.")

    # ========================================================================
    # TABLE 4: SUITE COST
    # ========================================================================

    report.append("\n\n" + "="*90)
    report.append("TABLE 4: VERIFICATION SUITE COST PER PROPERTY")
    report.append("="*90)
    report.append("")
    report.append(f"{'Property':<45} {'Runs':<8} {'Failures':<10} {'Seconds':<12} {'Share':<10}")
    report.append("-"*90)

    total = sum(float(r['seconds']) for r in suite_data) or 1.0
    for row in suite_data:
        share = float(row['seconds']) / total * 100
        report.append(f"{row['property']:<45} {row['runs']:<8} {row['failures']:<10} {row['seconds']:<12} "
                      f"{share:.1f}%")

    failures = sum(int(r['failures']) for r in suite_data)
    report.append("")
    report.append(f"Total: {total:.2f}s, failures: {failures}")

    # ========================================================================
    # SUMMARY TABLE
    # ========================================================================

    report.append("\n\n" + "="*90)
    report.append("TABLE 5: SUMMARY")
    report.append("="*90)
    report.append("")
    report.append(f"{'Check':<35} {'Status':<15}")
    report.append("-"*90)
    report.append(f"{'Eigensolver agreement':<35} {'VERIFIED' if worst <= 1e-8 else 'FAILED':<15}")
    report.append(f"{'Suite properties':<35} {'VERIFIED' if failures == 0 else 'FAILED':<15}")
    report.append("\n" + "="*90)

    return '\n'.join(report)


if __name__ == "__main__":
    print("\nGenerating groupoid lab analysis...")

    report = generate_lab_analysis()

    Path("outputs/analysis").mkdir(parents=True, exist_ok=True)
    with open('outputs/analysis/LAB_ANALYSIS.txt', 'w', encoding='utf-8') as f:
        f.write(report)

    print(report)
    print("\nSaved: outputs/analysis/LAB_ANALYSIS.txt")

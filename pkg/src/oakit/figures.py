"""Matplotlib renderings for the report commands.

Two figures: a verification view (the array as a raster next to its
zero-count histogram) and a bound view (the refined bound across alpha with
the plain and floor bounds for reference).  Everything is written straight to
file; no interactive backend is ever touched.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .bounds import BoundReport
from .designs import OrthogonalArray
from .verifier import VerificationReport

#: rows shown in the raster panel before truncation kicks in
RASTER_ROW_CAP = 512


def save_verification_figure(a: OrthogonalArray, report: VerificationReport,
                             path) -> None:
    fig, (ax_arr, ax_hist) = plt.subplots(
        1, 2, figsize=(9, 4.5), gridspec_kw={"width_ratios": [1, 1.3]})

    shown = a.rows[:RASTER_ROW_CAP]
    ax_arr.imshow(shown, aspect="auto", interpolation="nearest",
                  cmap="viridis", vmin=0, vmax=a.n - 1)
    title = f"{a.row_count} x {a.k} over {{0..{a.n - 1}}}"
    if a.row_count > RASTER_ROW_CAP:
        title += f" (first {RASTER_ROW_CAP} rows)"
    ax_arr.set_title(title, fontsize=10)
    ax_arr.set_xlabel("column")
    ax_arr.set_ylabel("row")

    hist = report.zero_count_histogram
    if hist:
        xs = sorted(hist)
        ax_hist.bar(xs, [hist[x] for x in xs], color="#4878a8", edgecolor="black")
        ax_hist.set_xticks(xs)
    ax_hist.set_xlabel("zeros per row (repeated block excluded)")
    ax_hist.set_ylabel("rows")
    verdict = "strength 2" if report.is_oa else "NOT an orthogonal array"
    bits = [verdict]
    if report.is_oa:
        bits.append(f"lambda={report.lambda_observed}")
    if report.m_observed is not None:
        bits.append(f"m={report.m_observed}")
    if report.classification:
        bits.append(", ".join(sorted(report.classification)))
    ax_hist.set_title("; ".join(bits), fontsize=10)

    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_bounds_figure(report: BoundReport, path) -> None:
    fig, ax = plt.subplots(figsize=(7, 4.5))
    if report.refined:
        alphas = sorted(report.refined)
        values = [float(report.refined[a]) for a in alphas]
        ax.plot(alphas, values, "o-", color="#4878a8", label="refined bound")
        # keep the view on the informative region; vacuous values explode
        cap = 3.0 * float(report.rao_bound)
        finite = [v for v in values if v <= cap]
        if finite:
            ax.set_ylim(0, max(max(finite), float(report.rao_bound)) * 1.2)
    ax.axhline(float(report.rao_bound), color="#a84848", linestyle="--",
               label=f"m <= {report.rao_bound}")
    ax.axhline(report.floor, color="#48a860", linestyle=":",
               label=f"floor {report.floor}")
    if report.best_alpha is not None:
        ax.plot([report.best_alpha], [float(report.best_refined)], "s",
                color="#a84848", markersize=9, fillstyle="none",
                label=f"best: alpha={report.best_alpha}")
    ax.set_xlabel("alpha")
    ax.set_ylabel("multiplicity bound")
    ax.set_title(f"k={report.k}, n={report.n}, lambda={report.lam}", fontsize=10)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)

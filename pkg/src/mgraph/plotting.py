"""Figure rendering for verification reports and algorithm comparisons.

Each renderer takes the already-computed series from a report and writes
one PNG next to the CSV output; nothing here recomputes graph data.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def save_property_figure(report, path: str) -> str:
    pid = report.property_id
    if pid == 1:
        fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
        hist = report.series.get("deviation_hist", {})
        ks = np.asarray(hist.get("k", []), dtype=float)
        cnt = np.asarray(hist.get("count", []), dtype=float)
        if ks.size:
            ax1.bar(ks, cnt / cnt.sum(), width=0.85, color="#4878a8")
        ax1.set_xlabel("tau - ceil(class mean)")
        ax1.set_ylabel("fraction of high-degree vertices")
        ax1.set_title("deviation histogram")
        tail = report.series.get("deviation_tail", {})
        tk = np.asarray(tail.get("k", []), dtype=float)
        tf = np.asarray(tail.get("fraction", []), dtype=float)
        pos = tf > 0
        if pos.any():
            ax2.semilogy(tk[pos], tf[pos], "o-", color="#a84848")
        ax2.set_xlabel("k")
        ax2.set_ylabel("fraction with deviation >= k")
        ax2.set_title("deviation tail")
    elif pid == 2:
        fig, ax = plt.subplots(figsize=(5.5, 3.6))
        hist = report.series["slack_hist"]
        ax.bar(hist["slack"], np.asarray(hist["count"], dtype=float),
               width=0.85, color="#4878a8")
        ax.set_xlabel("tau_s + tau_t - dist(s,t)")
        ax.set_ylabel("pairs")
        ax.set_title("clock slack over sampled pairs")
    elif pid == 3:
        fig, ax = plt.subplots(figsize=(6, 4))
        styles = {"curve_all": ("all targets", "-"),
                  "curve_tau_lt_d6": ("tau < D/6", "--"),
                  "curve_tau_d6_d3": ("D/6 <= tau < D/3", "-."),
                  "curve_tau_gt_d3": ("tau >= D/3", ":")}
        zref = None
        for name, (label, ls) in styles.items():
            if name not in report.series:
                continue
            ser = report.series[name]
            z = np.asarray(ser["z"], dtype=float)
            curve = np.asarray(ser["curve"], dtype=float)
            ok = np.isfinite(curve)
            zref = z
            if ok.any():
                ax.plot(z[ok], curve[ok], ls, label=label)
        if zref is not None:
            ax.plot(zref, zref, color="gray", lw=0.8, label="z (allowance)")
        ax.set_xlabel("z")
        ax.set_ylabel("1 + log(N_z/|T|)/log n")
        ax.legend(fontsize=8)
        ax.set_title("violation-threshold curves")
    elif pid == 4:
        fig, ax = plt.subplots(figsize=(5.5, 4))
        ser = report.series["degree_tail"]
        d = np.asarray(ser["d"], dtype=float)
        cnt = np.asarray(ser["count"], dtype=float)
        ax.loglog(d, cnt, "o", color="#4878a8", label="tail counts")
        slope = report.counts["slope"]
        icept = report.counts["intercept"]
        ax.loglog(d, np.exp(icept) * d ** slope, "-", color="#a84848",
                  label=f"fit slope {slope:.2f}")
        ax.set_xlabel("degree threshold d")
        ax.set_ylabel("# vertices with degree > d")
        ax.legend(fontsize=8)
        ax.set_title("degree tail")
    else:
        raise ValueError(f"unknown property id {pid}")
    fig.suptitle(f"property {pid}: {'pass' if report.passed else 'fail'}",
                 fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_algo_comparison(results: list[dict], path: str) -> str:
    """Bar chart of reported values and BFS budgets per algorithm."""
    names = [r["algo"] for r in results]
    values = [r["value"] for r in results]
    budgets = [r["bfs_count"] for r in results]
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 3.8))
    xs = np.arange(len(names))
    ax1.bar(xs, values, color="#4878a8")
    ax1.set_xticks(xs, names, rotation=30, ha="right", fontsize=8)
    ax1.set_ylabel("reported value")
    ax2.bar(xs, budgets, color="#a84848")
    ax2.set_xticks(xs, names, rotation=30, ha="right", fontsize=8)
    ax2.set_ylabel("BFS count")
    ax2.set_yscale("log")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path

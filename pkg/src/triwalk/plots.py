"""Figure rendering for the experiment tables.

Each function takes the records a CLI subcommand produced and saves one
figure to file.  Rendering is strictly a view of the emitted tables;
nothing here feeds back into the numbers.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

plt.rcParams.update(
    {
        "figure.figsize": (6.4, 4.0),
        "font.size": 9,
        "axes.grid": True,
        "grid.alpha": 0.3,
        "savefig.dpi": 150,
        "savefig.bbox": "tight",
    }
)


def _finish(fig, path: str) -> None:
    fig.savefig(path)
    plt.close(fig)


def plot_pdf(record, path: str, log_y: bool = False) -> None:
    fig, ax = plt.subplots()
    ax.plot(record.abscissa, record.column("p"), ".", ms=2)
    ax.set_xlabel("site n")
    ax.set_ylabel("probability")
    if log_y:
        ax.set_yscale("log")
    ax.set_title(f"PDF at t = {record.meta.get('t', '?')}")
    _finish(fig, path)


def plot_localization(records, path: str) -> None:
    fig, ax = plt.subplots()
    for rec in records:
        n = rec.abscissa
        pred = rec.column("p1_predicted")
        est = rec.column("localization_estimate")
        line, = ax.plot(n, np.where(pred > 0, pred, np.nan), "-", lw=1)
        ax.plot(n, est, "o", ms=3, mfc="none", color=line.get_color(), label=rec.label)
    ax.set_yscale("log")
    ax.set_xlabel("site n")
    ax.set_ylabel("stationary probability")
    ax.legend(fontsize=6, title="initial spinor (lines: closed form)")
    _finish(fig, path)


def plot_comparison(record, path: str) -> None:
    fig, (ax0, ax1) = plt.subplots(2, 1, sharex=True, figsize=(6.4, 5.6))
    n = record.abscissa
    ax0.plot(n, record.column("simulated"), ".", ms=2, label="simulated")
    ax0.plot(n, record.column("predicted"), "-", lw=0.7, label="asymptotic")
    ax0.set_ylabel("probability")
    ax0.legend(fontsize=7)
    eps = record.column("relative_difference")
    ax1.semilogy(n, np.where(eps > 0, eps, np.nan), ".", ms=2)
    ax1.set_xlabel("site n")
    ax1.set_ylabel("relative difference")
    _finish(fig, path)


def plot_comparison_smoothed(record, path: str) -> None:
    fig, ax = plt.subplots()
    n = record.abscissa
    ax.plot(n, record.column("simulated"), ".", color="0.7", ms=1.5, label="raw PDF")
    ax.plot(n, record.column("smoothed"), ".", ms=2, label="spatial average")
    ax.plot(n, record.column("predicted"), "-", lw=0.8, label="smooth density")
    ax.set_xlabel("site n")
    ax.set_ylabel("probability")
    ax.legend(fontsize=7)
    _finish(fig, path)


def plot_weak_limit(record, path: str) -> None:
    fig, ax = plt.subplots()
    ax.plot(record.abscissa, record.column("f"), "-")
    delta = record.meta.get("delta_weight")
    if delta:
        ax.annotate(
            f"delta weight at v=0: {delta:.6f}",
            xy=(0.0, 0.0),
            xytext=(0.05, 0.9),
            textcoords="axes fraction",
            arrowprops={"arrowstyle": "->"},
            fontsize=8,
        )
    ax.set_xlabel("velocity v = n/t")
    ax.set_ylabel("front density f(v)")
    _finish(fig, path)


def plot_moments(record, path: str) -> None:
    fig, (ax0, ax1) = plt.subplots(2, 1, sharex=True, figsize=(6.4, 5.6))
    t = record.abscissa
    ax0.loglog(t, record.column("n2_simulated") * t.astype(float) ** 2, "o", ms=4, label="simulated")
    ax0.loglog(t, record.column("n2_predicted") * t.astype(float) ** 2, "-", lw=1, label="predicted")
    ax0.set_ylabel("<n^2>")
    ax0.legend(fontsize=7)
    ax1.loglog(t, record.column("n2_relative_difference"), "s", ms=4)
    ax1.set_xlabel("t")
    ax1.set_ylabel("relative difference")
    _finish(fig, path)


def plot_convergence(record, path: str, fit=None) -> None:
    fig, ax = plt.subplots()
    t = record.abscissa
    dev = np.abs(record.column("deviation"))
    ax.loglog(t, np.where(dev > 0, dev, np.nan), ".", ms=1.5, label="|deviation|")
    if fit is not None:
        tt = np.geomspace(fit.window[0], fit.window[1], 64)
        ax.loglog(tt, np.exp(fit.intercept) * tt**fit.exponent, "k-", lw=1,
                  label=f"envelope ~ t^{fit.exponent:.2f}")
    ax.set_xlabel("t")
    ax.set_ylabel("|p - smooth|")
    ax.legend(fontsize=7)
    ax.set_title(f"site n = {record.meta.get('site', '?')}")
    _finish(fig, path)


def plot_oracle(record, path: str) -> None:
    fig, ax = plt.subplots()
    err = record.column("amplitude_error")
    ax.semilogy(record.abscissa, np.where(err > 0, err, np.nan), ".", ms=2)
    ax.set_xlabel("site n")
    ax.set_ylabel("max component error")
    ax.set_title("site-space evolution vs spectral oracle")
    _finish(fig, path)

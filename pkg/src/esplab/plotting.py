"""Static SVG figures (matplotlib, Agg backend, reproducible output)."""
import io

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .io import write_text_atomic  # noqa: E402

plt.rcParams["svg.hashsalt"] = "esplab"


def _save(fig, path):
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None})
    plt.close(fig)
    write_text_atomic(path, buf.getvalue())


def line_plot(path, series, *, xlabel, ylabel, title="", log_y=False, scatter=False):
    """``series`` is a list of ``(label, x, y)`` tuples."""
    fig, ax = plt.subplots(figsize=(8, 4.5))
    for label, x, y in series:
        if scatter:
            ax.plot(x, y, ".", ms=2, label=label)
        else:
            ax.plot(x, y, lw=0.9, label=label)
    if log_y:
        ax.set_yscale("log")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    if any(label for label, _, _ in series):
        ax.legend(fontsize=7)
    fig.tight_layout()
    _save(fig, path)

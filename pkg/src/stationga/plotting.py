"""Fitness-curve figures.

Uses the Agg backend and pins the SVG hash salt and drops the date stamp so
the same data always produces the same file.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STYLE = {
    "svg.hashsalt": "stationga",
    "font.size": 11,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "lines.linewidth": 1.4,
}


def fitness_figure(generations, series: dict, title: str = ""):
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(7, 4.3))
        for label, ys in series.items():
            ax.plot(generations, ys, label=label)
        ax.set_xlabel("generation")
        ax.set_ylabel("fitness (1 / total cost)")
        if title:
            ax.set_title(title)
        ax.legend(frameon=False)
        fig.tight_layout()
    return fig


def save_figure(fig, path, fmt=None) -> None:
    with plt.rc_context(STYLE):
        fig.savefig(path, format=fmt, metadata={"Date": None} if (fmt or str(path)).endswith("svg") else None)
    plt.close(fig)


def plot_run(report, path, title: str = "") -> None:
    """Average, minimum and maximum fitness per generation."""
    fig = fitness_figure(
        report.series("generation"),
        {
            "avg": report.series("avg_fitness"),
            "min": report.series("min_fitness"),
            "max": report.series("max_fitness"),
        },
        title,
    )
    save_figure(fig, path, "svg")

# visualizer.py
import io
import os
from typing import List, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd

from ..Core_module.errors import UsageError
from ..Core_module.utils import log_info
from .utils import safe_write_csv, safe_write_text

Series = Tuple[str, Sequence[float], Sequence[float]]

# SVG 안의 난수 id 를 고정해서 같은 입력이면 같은 파일이 나오게 함
plt.rcParams["svg.hashsalt"] = "penlog"


class CStarPlotter:
    """
    C*-vs-n 꺾은선 그래프 (SVG).
    series k 의 선은 SVG group id "series-<k>" 로 저장되므로 파일에서 바로 셀 수 있습니다.
    """

    def __init__(self, xlabel: str = "n", ylabel: str = "C*"):
        self.xlabel = xlabel
        self.ylabel = ylabel
        self.series: List[Series] = []

    def add_series(self, label: str, xs, ys) -> None:
        xs, ys = list(map(float, xs)), list(map(float, ys))
        if len(xs) != len(ys):
            raise UsageError(f"series {label!r}: {len(xs)} x values but {len(ys)} y values")
        if not xs:
            raise UsageError(f"series {label!r} has no points")
        self.series.append((str(label), xs, ys))

    def to_frame(self) -> pd.DataFrame:
        rows = [
            {"series": label, self.xlabel: x, self.ylabel: y}
            for label, xs, ys in self.series for x, y in zip(xs, ys)
        ]
        return pd.DataFrame(rows, columns=["series", self.xlabel, self.ylabel])

    def render(self) -> str:
        if not self.series:
            raise UsageError("nothing to plot: the series list is empty")
        fig, ax = plt.subplots(figsize=(6, 4))
        try:
            for k, (label, xs, ys) in enumerate(self.series):
                (line,) = ax.plot(xs, ys, marker="o", markersize=4, label=label)
                line.set_gid(f"series-{k}")
            ax.axhline(1.0, color="grey", linewidth=0.8, linestyle=":") # C* = 1 (oracle)
            ax.set_xlabel(self.xlabel)
            ax.set_ylabel(self.ylabel)
            ax.legend(fontsize=8)
            fig.tight_layout()
            buf = io.StringIO()
            fig.savefig(buf, format="svg", metadata={"Date": None})
        finally:
            plt.close(fig)
        return buf.getvalue()

    def save(self, path: str) -> str:
        """SVG 와 같은 이름의 .csv (그린 데이터) 를 함께 저장하고 csv 경로를 돌려줍니다."""
        svg = self.render()
        csv_path = os.path.splitext(path)[0] + ".csv"
        safe_write_text(svg, path)
        safe_write_csv(self.to_frame(), csv_path)
        log_info(f"Saved plot: {path} (+ {os.path.basename(csv_path)})")
        return csv_path


def emit_plot(series: Sequence[Series], path: str) -> str:
    """series = [(label, xs, ys), ...] 를 SVG 로 저장. 반환값은 sibling csv 경로"""
    plotter = CStarPlotter()
    for label, xs, ys in series:
        plotter.add_series(label, xs, ys)
    return plotter.save(path)

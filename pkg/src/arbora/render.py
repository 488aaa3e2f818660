"""Portrait export: Graphviz DOT text and matplotlib figures."""

from __future__ import annotations

from pathlib import Path

from .wreath import Portrait


def portrait_to_dot(portrait: Portrait, name: str = "portrait") -> str:
    """DOT digraph; node ids are ``v``, ``v.1``, ``v.1.2``, ... by path."""
    lines = [f'digraph "{name}" {{', "\tordering=out;", "\tnode [shape=box];"]

    def walk(node: Portrait, nid: str):
        lines.append(f'\t"{nid}" [label="{node.root_label}"];')
        for i, child in enumerate(node.children, 1):
            cid = f"{nid}.{i}"
            walk(child, cid)
            lines.append(f'\t"{nid}" -> "{cid}" [label="{i}"];')

    walk(portrait, "v")
    lines.append("}")
    return "\n".join(lines) + "\n"


def render_portrait_dot(portrait: Portrait) -> str:
    return portrait_to_dot(portrait)


def _layout(portrait: Portrait):
    """Leaves evenly spaced; parents centred over their children."""
    pos = {}
    counter = [0]

    def place(node, path, depth):
        if not node.children:
            x = counter[0]
            counter[0] += 1
        else:
            xs = [place(ch, path + (i,), depth + 1) for i, ch in enumerate(node.children, 1)]
            x = sum(xs) / len(xs)
        pos[path] = (x, -depth, node.root_label)
        return x

    place(portrait, (), 0)
    return pos, max(counter[0], 1)


def draw_portrait(ax, portrait: Portrait, title: str | None = None):
    pos, width = _layout(portrait)
    for path, (x, y, _) in pos.items():
        if path:
            px, py, _ = pos[path[:-1]]
            ax.plot([px, x], [py, y], color="0.6", lw=0.8, zorder=1)
    fontsize = 9 if width <= 9 else max(4, int(80 / width))
    for path, (x, y, label) in pos.items():
        trivial = label.is_identity()
        ax.text(
            x, y, str(label), ha="center", va="center", fontsize=fontsize, zorder=2,
            bbox=dict(boxstyle="round,pad=0.25", fc="white" if trivial else "#dbe8f6",
                      ec="0.5" if trivial else "#2b5d8a", lw=0.8),
        )
    ax.set_xlim(-0.7, width - 0.3)
    ax.set_ylim(-portrait.depth - 0.5, 0.5)
    ax.axis("off")
    if title:
        ax.set_title(title, fontsize=11)


def save_portraits_figure(portraits, path, columns: int | None = None) -> Path:
    """One panel per ``(title, portrait)`` pair, written to ``path``."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    portraits = list(portraits)
    n = len(portraits)
    cols = columns or min(n, 3)
    rows = (n + cols - 1) // cols
    fig, axes = plt.subplots(rows, cols, figsize=(4.2 * cols, 2.6 * rows), squeeze=False)
    for ax, (title, p) in zip(axes.flat, portraits):
        draw_portrait(ax, p, title)
    for ax in list(axes.flat)[n:]:
        ax.axis("off")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def save_orbit_figure(sizes, degree: int, path, title: str | None = None) -> Path:
    """Orbit size of 1...1 per level against the level size d^n (log scale)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    levels = [n for n, _ in sizes]
    fig, ax = plt.subplots(figsize=(5, 3.4))
    ax.semilogy(levels, [degree**n for n in levels], "k--", lw=1, label="$d^n$")
    ax.semilogy(levels, [s for _, s in sizes], "o", color="#2b5d8a", label="orbit of $1^n$")
    ax.set_xlabel("level $n$")
    ax.set_ylabel("vertices")
    ax.set_xticks(levels)
    ax.legend(frameon=False)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path

"""Observation and interaction complexity of a single document.

The element tree is simplified with a wrapper-collapse rule that
approximates a simplified accessibility tree: an element with no direct
text, no interactive role, and exactly one child is replaced by that
child. The document skeleton (html, head, body) is never collapsed.
Metrics: max root-to-leaf depth after simplification, plus counts of
distinct fill, click, and choice elements.
"""

from __future__ import annotations

from dataclasses import dataclass

from storelab.analyzer.markup import Element, parse_document

STRUCTURAL_TAGS = {"html", "head", "body"}


def simplify(element: Element) -> Element:
    """Apply wrapper collapse bottom-up; returns the replacement node."""
    collapsed_children = [simplify(child) for child in element.children]
    node = Element(
        tag=element.tag,
        attrs=element.attrs,
        children=collapsed_children,
        text=element.text,
        pos=element.pos,
    )
    if (
        node.tag not in STRUCTURAL_TAGS
        and not node.text
        and not node.interactive
        and len(node.children) == 1
    ):
        return node.children[0]
    return node


def tree_depth(element: Element) -> int:
    if not element.children:
        return 1
    return 1 + max(tree_depth(child) for child in element.children)


@dataclass
class PageComplexity:
    tree_depth: int
    fill_count: int
    click_count: int
    choice_count: int

    def to_json(self) -> dict:
        return {
            "tree_depth": self.tree_depth,
            "fill_count": self.fill_count,
            "click_count": self.click_count,
            "choice_count": self.choice_count,
        }


def page_complexity(root: Element) -> PageComplexity:
    simplified = simplify(root)
    counts = {"fill": 0, "click": 0, "choice": 0}
    for node in simplified.iter():
        kind = node.kind
        if kind is not None:
            counts[kind] += 1
    return PageComplexity(
        tree_depth=tree_depth(simplified),
        fill_count=counts["fill"],
        click_count=counts["click"],
        choice_count=counts["choice"],
    )


def complexity(html_document: str) -> PageComplexity:
    """Parse and measure one document; malformed markup raises MarkupError."""
    return page_complexity(parse_document(html_document))

"""Strict HTML parsing into an element tree.

Built on the standard library tokenizer with balance checking layered on
top: mismatched or unclosed non-void tags raise ``MarkupError`` naming the
first offending line:column position.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from html.parser import HTMLParser

from storelab.errors import MarkupError

VOID_ELEMENTS = {
    "area", "base", "br", "col", "embed", "hr", "img", "input",
    "link", "meta", "param", "source", "track", "wbr",
}

FILL_INPUT_TYPES = {
    "text", "search", "email", "url", "tel", "number", "password", "", None,
}
CLICK_INPUT_TYPES = {"button", "submit", "reset", "checkbox", "radio", "image"}


@dataclass
class Element:
    tag: str
    attrs: dict[str, str | None] = field(default_factory=dict)
    children: list["Element"] = field(default_factory=list)
    text: str = ""  # direct text content, whitespace-stripped
    pos: tuple[int, int] = (0, 0)

    def iter(self):
        yield self
        for child in self.children:
            yield from child.iter()

    def attr(self, name: str) -> str | None:
        return self.attrs.get(name)

    def has_attr(self, name: str) -> bool:
        """Presence test; valueless attributes (checked, disabled) parse as None."""
        return name in self.attrs

    @property
    def kind(self) -> str | None:
        """fill / click / choice category, or None for non-interactive."""
        tag = self.tag
        if tag == "select":
            return "choice"
        if tag in ("textarea",):
            return "fill"
        if tag == "input":
            input_type = (self.attr("type") or "").lower() or None
            if input_type in CLICK_INPUT_TYPES:
                return "click"
            if input_type in FILL_INPUT_TYPES or input_type is None:
                return "fill"
            return None
        if tag in ("a", "button"):
            return "click"
        if self.has_attr("contenteditable"):
            return "fill"
        if (self.attr("role") or "").lower() == "button":
            return "click"
        return None

    @property
    def interactive(self) -> bool:
        return self.kind is not None


class _TreeBuilder(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.root: Element | None = None
        self.stack: list[Element] = []

    def _fail(self, message: str, pos: tuple[int, int] | None = None) -> None:
        line, col = pos or self.getpos()
        raise MarkupError(f"{message} at line {line}, column {col + 1}")

    def _attach(self, element: Element) -> None:
        if self.stack:
            self.stack[-1].children.append(element)
        elif self.root is None:
            self.root = element
        else:
            self._fail(f"multiple root elements (<{element.tag}>)", element.pos)

    def handle_starttag(self, tag, attrs):
        element = Element(tag=tag, attrs=dict(attrs), pos=self.getpos())
        self._attach(element)
        if tag not in VOID_ELEMENTS:
            self.stack.append(element)

    def handle_startendtag(self, tag, attrs):
        self._attach(Element(tag=tag, attrs=dict(attrs), pos=self.getpos()))

    def handle_endtag(self, tag):
        if tag in VOID_ELEMENTS:
            return
        if not self.stack:
            self._fail(f"closing </{tag}> with no open element")
        if self.stack[-1].tag != tag:
            self._fail(
                f"closing </{tag}> but <{self.stack[-1].tag}> is open"
            )
        self.stack.pop()

    def handle_data(self, data):
        stripped = data.strip()
        if stripped and self.stack:
            current = self.stack[-1]
            current.text = (current.text + " " + stripped).strip()


def parse_document(html: str) -> Element:
    """Parse markup into a tree; raise MarkupError on imbalance."""
    builder = _TreeBuilder()
    builder.feed(html)
    builder.close()
    if builder.stack:
        unclosed = builder.stack[-1]
        raise MarkupError(
            f"unclosed <{unclosed.tag}> at line {unclosed.pos[0]},"
            f" column {unclosed.pos[1] + 1}"
        )
    if builder.root is None:
        raise MarkupError("empty document at line 1, column 1")
    return builder.root

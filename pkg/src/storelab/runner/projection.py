"""Textual page projection with a stable element-id overlay.

Every interactive element gets an ``elem-N`` tag in document order; agents
reference elements by that id in their actions. Forms are parsed with
their default field values so a submit click can be replayed as the
request a browser would send.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from storelab.analyzer.markup import Element, parse_document


@dataclass
class FormField:
    name: str
    value: str = ""
    input_type: str = "text"
    checked: bool = False
    disabled: bool = False


@dataclass
class FormModel:
    method: str
    action: str
    fields: list[FormField] = field(default_factory=list)

    def submission(self, submitter: FormField | None = None) -> dict[str, str]:
        """The name/value pairs a browser would submit."""
        data: dict[str, str] = {}
        for f in self.fields:
            if not f.name or f.disabled:
                continue
            if f.input_type in ("checkbox", "radio"):
                if f.checked:
                    data[f.name] = f.value
                continue
            if f.input_type in ("submit", "button"):
                continue  # only the clicked submitter participates
            data[f.name] = f.value
        if submitter is not None and submitter.name:
            data[submitter.name] = submitter.value
        return data


@dataclass
class PageElement:
    elem_id: str
    tag: str
    kind: str
    label: str
    href: str | None = None
    form: FormModel | None = None
    form_field: FormField | None = None
    attrs: dict[str, Any] = field(default_factory=dict)

    def describe(self) -> str:
        parts = [f"[{self.elem_id}] {self.kind} <{self.tag}>"]
        if self.label:
            parts.append(f'"{self.label}"')
        if self.href:
            parts.append(f"-> {self.href}")
        if self.form is not None and self.tag in ("button", "input"):
            parts.append(f"(submits {self.form.method.upper()} {self.form.action})")
        return " ".join(parts)


@dataclass
class PageModel:
    title: str
    elements: dict[str, PageElement]
    projection: str


def _element_label(node: Element) -> str:
    if node.text:
        return node.text[:80]
    for attr in ("aria-label", "placeholder", "value", "name"):
        value = node.attr(attr)
        if value:
            return str(value)[:80]
    return ""


def _subtree_text(node: Element) -> str:
    chunks = [n.text for n in node.iter() if n.text]
    return " ".join(chunks)


def build_page_model(html: str) -> PageModel:
    """Parse a page and tag interactive elements elem-1..N in document order."""
    root = parse_document(html)
    title = ""
    for node in root.iter():
        if node.tag == "title":
            title = node.text
            break

    elements: dict[str, PageElement] = {}
    lines: list[str] = [f"page: {title}"] if title else []
    counter = 0

    form_stack: list[FormModel] = []
    forms_by_node: dict[int, FormModel] = {}

    def walk(node: Element) -> None:
        nonlocal counter
        is_form = node.tag == "form"
        if is_form:
            model = FormModel(
                method=(node.attr("method") or "get").lower(),
                action=node.attr("action") or "",
            )
            form_stack.append(model)
            forms_by_node[id(node)] = model

        # Every form control participates in submissions (hidden inputs
        # included); only interactive ones get an elem id.
        current_form = form_stack[-1] if form_stack else None
        form_field = None
        if node.tag in ("input", "button", "select", "textarea") and current_form:
            input_type = (node.attr("type") or "").lower()
            if node.tag == "button":
                input_type = input_type or "submit"
            if node.tag == "select":
                selected = ""
                seen_first = False
                for option in node.children:
                    if option.tag != "option":
                        continue
                    value = option.attr("value")
                    value = value if value is not None else option.text
                    if not seen_first:
                        selected, seen_first = value, True
                    if option.has_attr("selected"):
                        selected = value
                form_field = FormField(
                    name=node.attr("name") or "", value=selected,
                    input_type="select",
                )
            else:
                form_field = FormField(
                    name=node.attr("name") or "",
                    value=node.attr("value") or "",
                    input_type=input_type
                    or ("textarea" if node.tag == "textarea" else "text"),
                    checked=node.has_attr("checked"),
                    disabled=node.has_attr("disabled"),
                )
            current_form.fields.append(form_field)

        kind = node.kind
        if kind is not None:
            counter += 1
            elem_id = f"elem-{counter}"
            label = _element_label(node) or (
                _subtree_text(node)[:80] if node.tag in ("a", "button") else ""
            )
            element = PageElement(
                elem_id=elem_id,
                tag=node.tag,
                kind=kind,
                label=label,
                href=node.attr("href"),
                form=current_form,
                form_field=form_field,
                attrs={k: v for k, v in node.attrs.items() if k.startswith("data-")},
            )
            elements[elem_id] = element
            lines.append(element.describe())

        for child in node.children:
            walk(child)
        if is_form:
            form_stack.pop()

    walk(root)
    return PageModel(title=title, elements=elements, projection="\n".join(lines))

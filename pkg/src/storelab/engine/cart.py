"""Session cart state machine.

Carts are the only mutable state in the engine. Mutations on one session
are serialized behind a per-session lock; cross-session operations never
block each other. Subtotal and savings are recomputed on every mutation.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from decimal import Decimal
from typing import Any

from storelab.catalog.model import Product, ShopBundle, Variant
from storelab.errors import StorelabError
from storelab.jsonio import money

ZERO = Decimal("0.00")


class CartError(StorelabError):
    status = 400


class UnknownVariant(CartError):
    status = 404


class UnavailableVariant(CartError):
    status = 422


@dataclass
class CartLine:
    variant_id: str
    quantity: int
    unit_price: Decimal
    compare_at_price: Decimal | None
    title: str
    product_handle: str
    options: dict[str, str]

    @property
    def line_total(self) -> Decimal:
        return self.unit_price * self.quantity

    @property
    def line_savings(self) -> Decimal:
        if self.compare_at_price is None or self.compare_at_price <= self.unit_price:
            return ZERO
        return (self.compare_at_price - self.unit_price) * self.quantity

    def to_json(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "variant_id": self.variant_id,
            "quantity": self.quantity,
            "unit_price": str(money(self.unit_price)),
            "line_total": str(money(self.line_total)),
            "title": self.title,
            "product_handle": self.product_handle,
            "options": dict(self.options),
        }
        if self.compare_at_price is not None:
            doc["compare_at_price"] = str(money(self.compare_at_price))
        return doc


@dataclass
class CartState:
    session_id: str
    lines: list[CartLine] = field(default_factory=list)

    @property
    def subtotal(self) -> Decimal:
        return sum((line.line_total for line in self.lines), ZERO)

    @property
    def savings(self) -> Decimal:
        return sum((line.line_savings for line in self.lines), ZERO)

    @property
    def list_total(self) -> Decimal:
        return self.subtotal + self.savings

    @property
    def item_count(self) -> int:
        return sum(line.quantity for line in self.lines)

    def to_json(self) -> dict[str, Any]:
        return {
            "session_id": self.session_id,
            "lines": [line.to_json() for line in self.lines],
            "subtotal": str(money(self.subtotal)),
            "savings": str(money(self.savings)),
            "item_count": self.item_count,
        }


def _line_for(product: Product, variant: Variant, quantity: int) -> CartLine:
    return CartLine(
        variant_id=variant.id,
        quantity=quantity,
        unit_price=variant.price,
        compare_at_price=variant.compare_at_price,
        title=product.title,
        product_handle=product.handle,
        options=dict(variant.options),
    )


class CartStore:
    """All session carts for one running engine."""

    def __init__(self, bundle: ShopBundle):
        self._bundle = bundle
        self._carts: dict[str, CartState] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()

    def _session_lock(self, session_id: str) -> threading.Lock:
        with self._registry_lock:
            if session_id not in self._locks:
                self._locks[session_id] = threading.Lock()
            return self._locks[session_id]

    def get(self, session_id: str) -> CartState:
        with self._registry_lock:
            if session_id not in self._carts:
                self._carts[session_id] = CartState(session_id=session_id)
            return self._carts[session_id]

    def _resolve(self, variant_id: str) -> tuple[Product, Variant]:
        hit = self._bundle.variant_by_id.get(variant_id)
        if hit is None:
            raise UnknownVariant(f"unknown variant: {variant_id!r}")
        return hit

    def mutate(
        self, session_id: str, kind: str, variant_id: str, quantity: int | None = None
    ) -> CartState:
        """Apply add / set_qty / remove and return the new state.

        add merges into an existing line by summing quantities; a quantity
        of zero removes the line. Failed mutations leave the cart unchanged.
        """
        with self._session_lock(session_id):
            cart = self.get(session_id)
            if kind == "add":
                product, variant = self._resolve(variant_id)
                if not variant.available:
                    raise UnavailableVariant(
                        f"variant {variant_id!r} is not available"
                    )
                qty = 1 if quantity is None else quantity
                if qty < 1:
                    raise CartError("add quantity must be >= 1")
                for line in cart.lines:
                    if line.variant_id == variant_id:
                        line.quantity += qty
                        break
                else:
                    cart.lines.append(_line_for(product, variant, qty))
            elif kind == "set_qty":
                product, variant = self._resolve(variant_id)
                qty = 0 if quantity is None else quantity
                if qty < 0:
                    raise CartError("quantity must be >= 0")
                for line in cart.lines:
                    if line.variant_id == variant_id:
                        if qty == 0:
                            cart.lines.remove(line)
                        else:
                            line.quantity = qty
                        break
                else:
                    if qty > 0:
                        cart.lines.append(_line_for(product, variant, qty))
            elif kind == "remove":
                self._resolve(variant_id)
                cart.lines = [l for l in cart.lines if l.variant_id != variant_id]
            else:
                raise CartError(f"unknown cart action: {kind!r}")
            return cart

    def reset_session(self, session_id: str) -> None:
        with self._session_lock(session_id):
            self.get(session_id).lines.clear()

    def reset_all(self) -> None:
        with self._registry_lock:
            self._carts.clear()

// Shared DOM + fetch scaffolding for the client tests.
import { Window } from "happy-dom";

import type { CartLine, CartState, MutationResponse } from "../src/storefront";

export function makeWindow(html: string): Window {
  const window = new Window({ url: "http://localhost:8400/collections/demo" });
  window.document.write(html);
  return window;
}

export const PAGE_SHELL = `<!DOCTYPE html>
<html><head><title>t</title></head><body>
<a href="/cart">Cart (<span data-sg-cart-badge>0</span>)</a>
<button data-sg-toggle="cart_drawer">Bag</button>
<button data-sg-toggle="search">Search</button>
<div data-sg-search-panel hidden>
  <input type="search" data-sg-search-input>
  <div data-sg-suggest hidden></div>
</div>
<main>
  <form method="post" action="/cart/add" data-sg-cart-add>
    <input type="hidden" name="id" value="lamp-v0">
    <input type="number" name="quantity" value="1" data-sg-qty-input>
    <button type="submit">Add to Cart</button>
  </form>
  <div data-sg-grid>
    <article class="product-card"><a href="/products/a">A</a></article>
  </div>
  <a href="/collections/demo?loaded=24" data-sg-load-more>Load more</a>
</main>
<aside data-sg-drawer hidden><div data-sg-drawer-content></div></aside>
</body></html>`;

export function cartLine(variantId: string, quantity: number, price = "10.00"): CartLine {
  return {
    variant_id: variantId,
    quantity,
    unit_price: price,
    line_total: price,
    title: variantId,
    product_handle: variantId,
    options: {},
  };
}

export function cartState(lines: CartLine[]): CartState {
  const count = lines.reduce((sum, line) => sum + line.quantity, 0);
  return {
    session_id: "s-test",
    lines,
    subtotal: "0.00",
    savings: "0.00",
    item_count: count,
  };
}

export function drawerHtml(lines: CartLine[]): string {
  const items = lines
    .map(
      (line) => `<li data-sg-line="${line.variant_id}">
        <span>${line.title}</span>
        <button data-sg-qty-minus>-</button>
        <span data-sg-qty>${line.quantity}</span>
        <button data-sg-qty-plus>+</button>
        <button data-sg-remove>Remove Item</button>
      </li>`,
    )
    .join("");
  return `<h2>Your Cart</h2><ul>${items}</ul>`;
}

export interface FakeServer {
  fetch: typeof fetch;
  cart: Map<string, number>;
  requests: Array<{ path: string; body: string }>;
  failNext: { value: boolean };
}

// Minimal in-memory stand-in for the engine's cart endpoints.
export function fakeServer(): FakeServer {
  const cart = new Map<string, number>();
  const requests: Array<{ path: string; body: string }> = [];
  const failNext = { value: false };

  const toState = (): CartState =>
    cartState(
      Array.from(cart.entries()).map(([variantId, quantity]) =>
        cartLine(variantId, quantity),
      ),
    );

  const respond = (payload: unknown, status = 200): Response =>
    new Response(JSON.stringify(payload), {
      status,
      headers: { "Content-Type": "application/json" },
    });

  const fetchImpl = (async (input: RequestInfo | URL, init?: RequestInit) => {
    const path = String(input);
    const body = init?.body ? String(init.body) : "";
    requests.push({ path, body });
    if (failNext.value) {
      failNext.value = false;
      return respond({ error: "boom" }, 500);
    }
    const params = new URLSearchParams(body);
    const id = params.get("id") ?? "";
    if (path.startsWith("/cart/add")) {
      const quantity = Number(params.get("quantity") ?? "1");
      cart.set(id, (cart.get(id) ?? 0) + quantity);
    } else if (path.startsWith("/cart/update")) {
      const quantity = Number(params.get("quantity") ?? "0");
      if (quantity <= 0) {
        cart.delete(id);
      } else {
        cart.set(id, quantity);
      }
    } else if (path.startsWith("/cart/remove")) {
      cart.delete(id);
    } else if (path.startsWith("/cart.js")) {
      return respond(toState());
    } else {
      return respond({ error: `unhandled ${path}` }, 404);
    }
    const state = toState();
    const payload: MutationResponse = {
      cart: state,
      drawer_html: drawerHtml(state.lines),
    };
    return respond(payload);
  }) as typeof fetch;

  return { fetch: fetchImpl, cart, requests, failNext };
}

export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}

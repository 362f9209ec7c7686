// Progressive enhancement for the storelab storefront engine.
//
// Every behavior here upgrades a plain form/link round-trip that works
// without this script; the server stays the source of truth. Hook points
// are the data-sg-* attributes the engine renders.
const JSON_HEADERS = { Accept: "application/json" };
export class CartApi {
    constructor(fetchFn = fetch.bind(globalThis)) {
        this.fetchFn = fetchFn;
    }
    async mutate(path, body) {
        const response = await this.fetchFn(path, {
            method: "POST",
            headers: { ...JSON_HEADERS, "Content-Type": "application/x-www-form-urlencoded" },
            body: new URLSearchParams(body).toString(),
        });
        if (!response.ok) {
            throw new Error(`cart mutation failed: ${response.status}`);
        }
        return (await response.json());
    }
    add(variantId, quantity = 1) {
        return this.mutate("/cart/add", { id: variantId, quantity: String(quantity) });
    }
    setQuantity(variantId, quantity) {
        return this.mutate("/cart/update", { id: variantId, quantity: String(quantity) });
    }
    remove(variantId) {
        return this.mutate("/cart/remove", { id: variantId });
    }
    async state() {
        const response = await this.fetchFn("/cart.js", { headers: JSON_HEADERS });
        if (!response.ok) {
            throw new Error(`cart state failed: ${response.status}`);
        }
        return (await response.json());
    }
    async suggest(query) {
        const response = await this.fetchFn(`/search/suggest.json?q=${encodeURIComponent(query)}`, { headers: JSON_HEADERS });
        if (!response.ok) {
            return [];
        }
        const payload = (await response.json());
        return payload.products;
    }
}
// ---------------------------------------------------------------------------
// Cart drawer
// ---------------------------------------------------------------------------
export class Drawer {
    constructor(doc, api) {
        this.doc = doc;
        this.api = api;
        this.state = { open: false, lines: [], badge_count: 0 };
        this.busy = false;
        this.queue = [];
    }
    get panel() {
        return this.doc.querySelector("[data-sg-drawer]");
    }
    get content() {
        return this.doc.querySelector("[data-sg-drawer-content]");
    }
    setOpen(open) {
        this.state.open = open;
        const panel = this.panel;
        if (panel) {
            if (open) {
                panel.removeAttribute("hidden");
            }
            else {
                panel.setAttribute("hidden", "");
            }
        }
    }
    toggle() {
        this.setOpen(!this.state.open);
    }
    applyMutation(result) {
        this.state.lines = result.cart.lines;
        this.state.badge_count = result.cart.item_count;
        const content = this.content;
        if (content) {
            content.innerHTML = result.drawer_html;
        }
        for (const badge of Array.from(this.doc.querySelectorAll("[data-sg-cart-badge]"))) {
            badge.textContent = String(result.cart.item_count);
        }
    }
    // One in-flight mutation; later actions wait their turn.
    enqueue(action) {
        return new Promise((resolve, reject) => {
            this.queue.push(() => action().then(resolve, (error) => {
                this.showRetry(action);
                reject(error);
            }));
            void this.drain();
        });
    }
    async drain() {
        if (this.busy) {
            return;
        }
        this.busy = true;
        while (this.queue.length > 0) {
            const next = this.queue.shift();
            try {
                await next();
            }
            catch {
                // the failing action already rendered its retry affordance
            }
        }
        this.busy = false;
    }
    showRetry(action) {
        const content = this.content;
        if (!content) {
            return;
        }
        // Re-sync from the server, then offer a retry.
        void this.api
            .state()
            .then((cart) => {
            this.state.lines = cart.lines;
            this.state.badge_count = cart.item_count;
            for (const badge of Array.from(this.doc.querySelectorAll("[data-sg-cart-badge]"))) {
                badge.textContent = String(cart.item_count);
            }
        })
            .catch(() => undefined);
        const note = this.doc.createElement("p");
        note.className = "retry";
        note.setAttribute("data-sg-retry", "");
        const button = this.doc.createElement("button");
        button.type = "button";
        button.textContent = "Retry";
        button.addEventListener("click", () => {
            note.remove();
            this.enqueue(action).catch(() => undefined);
        });
        note.append("Something went wrong. ");
        note.appendChild(button);
        content.appendChild(note);
    }
    lineQuantity(variantId) {
        const line = this.state.lines.find((l) => l.variant_id === variantId);
        return line ? line.quantity : 0;
    }
}
function formDataOf(doc, form) {
    const Ctor = doc.defaultView
        ?.FormData ?? FormData;
    return new Ctor(form);
}
function parseHtml(doc, html) {
    const Parser = doc.defaultView
        ?.DOMParser ?? DOMParser;
    return new Parser().parseFromString(html, "text/html");
}
function closestWithAttr(start, attr) {
    let node = start;
    while (node) {
        if (node.hasAttribute(attr)) {
            return node;
        }
        node = node.parentElement;
    }
    return null;
}
export function wireDrawer(doc, api) {
    const drawer = new Drawer(doc, api);
    doc.addEventListener("click", (event) => {
        const target = event.target;
        if (!target) {
            return;
        }
        const toggle = closestWithAttr(target, "data-sg-toggle");
        if (toggle && toggle.getAttribute("data-sg-toggle") === "cart_drawer") {
            event.preventDefault();
            drawer.toggle();
            return;
        }
        const stepperUp = closestWithAttr(target, "data-sg-qty-plus");
        const stepperDown = closestWithAttr(target, "data-sg-qty-minus");
        const remove = closestWithAttr(target, "data-sg-remove");
        const control = stepperUp ?? stepperDown ?? remove;
        if (!control) {
            return;
        }
        const lineEl = closestWithAttr(control, "data-sg-line");
        if (!lineEl) {
            return;
        }
        event.preventDefault();
        const variantId = lineEl.getAttribute("data-sg-line");
        drawer
            .enqueue(async () => {
            let result;
            if (remove) {
                result = await api.remove(variantId);
            }
            else {
                const delta = stepperUp ? 1 : -1;
                const next = Math.max(0, drawer.lineQuantity(variantId) + delta);
                result = await api.setQuantity(variantId, next);
            }
            drawer.applyMutation(result);
        })
            .catch(() => undefined); // surfaced via the retry affordance
    });
    // Add-to-cart forms post over fetch and open the drawer.
    doc.addEventListener("submit", (event) => {
        const form = event.target;
        if (!form || !form.hasAttribute("data-sg-cart-add")) {
            return;
        }
        event.preventDefault();
        const data = formDataOf(doc, form);
        const variantId = String(data.get("id") ?? "");
        const quantity = Number(data.get("quantity") ?? "1") || 1;
        drawer
            .enqueue(async () => {
            const result = await api.add(variantId, quantity);
            drawer.applyMutation(result);
            drawer.setOpen(true);
        })
            .catch(() => undefined);
    });
    // Seed local state from the server-rendered cart.
    void api
        .state()
        .then((cart) => {
        drawer.state.lines = cart.lines;
        drawer.state.badge_count = cart.item_count;
    })
        .catch(() => undefined);
    return drawer;
}
// ---------------------------------------------------------------------------
// Load more
// ---------------------------------------------------------------------------
export function wireLoadMore(doc, fetchFn = fetch.bind(globalThis)) {
    doc.addEventListener("click", (event) => {
        const target = event.target;
        const link = target ? closestWithAttr(target, "data-sg-load-more") : null;
        if (!link) {
            return;
        }
        event.preventDefault();
        const href = link.getAttribute("href");
        if (!href) {
            return;
        }
        void fetchFn(href)
            .then((response) => response.text())
            .then((html) => {
            const parsed = parseHtml(doc, html);
            const incoming = parsed.querySelector("[data-sg-grid]");
            const grid = doc.querySelector("[data-sg-grid]");
            if (!incoming || !grid) {
                return;
            }
            for (const child of Array.from(incoming.children)) {
                grid.appendChild(doc.importNode(child, true));
            }
            link.remove();
        })
            .catch(() => undefined); // the plain link still works on reload
    });
}
// ---------------------------------------------------------------------------
// Filter checkboxes: update the URL and swap the grid without a full reload
// ---------------------------------------------------------------------------
export function filterUrl(form, baseUrl) {
    const params = new URLSearchParams();
    const data = formDataOf(form.ownerDocument, form);
    for (const [key, value] of data.entries()) {
        params.set(key, String(value));
    }
    const query = params.toString();
    const action = form.getAttribute("action") ?? baseUrl;
    return query ? `${action}?${query}` : action;
}
export function wireFilters(doc, fetchFn = fetch.bind(globalThis)) {
    doc.addEventListener("change", (event) => {
        const input = event.target;
        if (!input || !input.hasAttribute("data-sg-filter")) {
            return;
        }
        const form = closestWithAttr(input, "data-sg-filter-form");
        if (!form) {
            return;
        }
        const url = filterUrl(form, doc.location?.pathname ?? "/");
        const win = doc.defaultView;
        if (win?.history?.pushState) {
            win.history.pushState({}, "", url);
        }
        void fetchFn(url)
            .then((response) => response.text())
            .then((html) => {
            swapListing(doc, parseHtml(doc, html));
        })
            .catch(() => form.submit()); // degrade to the normal round trip
    });
}
function swapListing(doc, parsed) {
    const currentGrid = doc.querySelector("[data-sg-grid]");
    const incomingGrid = parsed.querySelector("[data-sg-grid]");
    const currentEmpty = doc.querySelector(".empty-state");
    const incomingEmpty = parsed.querySelector(".empty-state");
    const anchor = currentGrid ?? currentEmpty;
    const replacement = incomingGrid ?? incomingEmpty;
    if (anchor && replacement) {
        anchor.replaceWith(doc.importNode(replacement, true));
    }
    const currentMore = doc.querySelector("[data-sg-load-more]");
    const incomingMore = parsed.querySelector("[data-sg-load-more]");
    if (currentMore && !incomingMore) {
        currentMore.remove();
    }
    else if (currentMore && incomingMore) {
        currentMore.setAttribute("href", incomingMore.getAttribute("href") ?? "");
    }
}
// ---------------------------------------------------------------------------
// Predictive search
// ---------------------------------------------------------------------------
export const SUGGEST_DEBOUNCE_MS = 150;
export const SUGGEST_LIMIT = 10;
export function renderSuggestions(doc, records) {
    const panel = doc.querySelector("[data-sg-suggest]");
    if (!panel) {
        return;
    }
    panel.innerHTML = "";
    if (records.length === 0) {
        panel.setAttribute("hidden", "");
        return;
    }
    panel.removeAttribute("hidden");
    for (const record of records.slice(0, SUGGEST_LIMIT)) {
        const item = doc.createElement("a");
        item.className = "suggest-item";
        item.setAttribute("href", record.url);
        const title = doc.createElement("span");
        title.className = "suggest-title";
        title.textContent = record.title;
        const price = doc.createElement("span");
        price.className = "suggest-price";
        price.textContent = record.price;
        const vendor = doc.createElement("span");
        vendor.className = "suggest-vendor";
        vendor.textContent = record.vendor;
        item.append(title, " ", price, " ", vendor);
        panel.appendChild(item);
    }
}
export function wireSuggest(doc, api, debounceMs = SUGGEST_DEBOUNCE_MS) {
    let timer;
    doc.addEventListener("click", (event) => {
        const target = event.target;
        const toggle = target ? closestWithAttr(target, "data-sg-toggle") : null;
        if (!toggle) {
            return;
        }
        const name = toggle.getAttribute("data-sg-toggle");
        const panelAttr = {
            search: "data-sg-search-panel",
            navigation: "data-sg-nav-open",
            filter_panel: "data-sg-filter-panel",
            sort: "data-sg-sort-panel",
        }[name ?? ""];
        if (!panelAttr) {
            return;
        }
        if (name === "navigation") {
            doc.body.toggleAttribute("data-sg-nav-open");
            return;
        }
        const panel = doc.querySelector(`[${panelAttr}]`);
        if (panel) {
            event.preventDefault();
            panel.toggleAttribute("hidden");
        }
    });
    doc.addEventListener("input", (event) => {
        const input = event.target;
        if (!input || !input.hasAttribute("data-sg-search-input")) {
            return;
        }
        const query = input.value.trim();
        if (timer !== undefined) {
            clearTimeout(timer);
        }
        if (!query) {
            renderSuggestions(doc, []);
            return;
        }
        timer = setTimeout(() => {
            void api.suggest(query).then((records) => renderSuggestions(doc, records));
        }, debounceMs);
    });
}
export function enhance(doc, fetchFn = fetch.bind(globalThis)) {
    const api = new CartApi(fetchFn);
    const drawer = wireDrawer(doc, api);
    wireLoadMore(doc, fetchFn);
    wireFilters(doc, fetchFn);
    wireSuggest(doc, api);
    return { drawer, api };
}
if (typeof window !== "undefined" && typeof document !== "undefined") {
    const boot = () => {
        window.__storelab = enhance(document);
    };
    if (document.readyState === "loading") {
        document.addEventListener("DOMContentLoaded", boot);
    }
    else {
        boot();
    }
}

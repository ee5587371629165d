import type { Category } from "./types";
import { CATEGORIES } from "./types";
import { joinKeywords, splitKeywords } from "./keywords";

export interface EditorElement {
  ref: string;
  kind: "asset" | "edge";
  label: string;
  descriptors: Record<string, string[]>;
}

// Keyword editor over the fixed seven-category descriptor profile; the
// category set cannot be extended from the UI. Applying a row hands the
// parsed keywords to the app, which runs the edit + re-analysis round trip.
export class DescriptorEditor {
  private readonly onApply: (ref: string, category: Category, keywords: string[]) => void;
  private readonly placeholder: HTMLElement;
  private readonly heading: HTMLElement;
  private readonly form: HTMLFormElement;
  private readonly inputs = new Map<Category, HTMLInputElement>();
  private readonly buttons = new Map<Category, HTMLButtonElement>();
  private readonly errors = new Map<Category, HTMLElement>();
  private current: EditorElement | null = null;
  private busy = false;

  constructor(
    container: HTMLElement,
    onApply: (ref: string, category: Category, keywords: string[]) => void,
  ) {
    this.onApply = onApply;

    this.placeholder = document.createElement("p");
    this.placeholder.className = "editor-placeholder";
    this.placeholder.dataset.role = "editor-placeholder";
    this.placeholder.textContent = "Select an element to inspect and edit its keywords.";

    this.heading = document.createElement("h3");
    this.heading.dataset.role = "editor-title";
    this.heading.hidden = true;

    this.form = document.createElement("form");
    this.form.dataset.role = "descriptor-form";
    this.form.hidden = true;
    this.form.addEventListener("submit", (event) => event.preventDefault());
    for (const category of CATEGORIES) {
      const row = document.createElement("div");
      row.className = "descriptor-row";

      const label = document.createElement("label");
      label.textContent = category.replace(/_/g, " ");

      const input = document.createElement("input");
      input.type = "text";
      input.dataset.category = category;
      input.placeholder = "keyword; another keyword";
      label.append(input);

      const apply = document.createElement("button");
      apply.type = "button";
      apply.dataset.role = `apply-${category}`;
      apply.textContent = "Apply";
      apply.addEventListener("click", () => {
        if (this.busy || this.current === null) return;
        this.hideError(category);
        this.onApply(this.current.ref, category, splitKeywords(input.value));
      });

      const error = document.createElement("span");
      error.className = "field-error";
      error.dataset.role = `error-${category}`;
      error.hidden = true;

      row.append(label, apply, error);
      this.form.append(row);
      this.inputs.set(category, input);
      this.buttons.set(category, apply);
      this.errors.set(category, error);
    }

    container.append(this.placeholder, this.heading, this.form);
  }

  element(): EditorElement | null {
    return this.current;
  }

  show(element: EditorElement): void {
    this.current = element;
    this.heading.textContent = `${element.label || element.ref} — ${element.kind} ${element.ref}`;
    this.heading.hidden = false;
    this.placeholder.hidden = true;
    this.form.hidden = false;
    for (const category of CATEGORIES) {
      const input = this.inputs.get(category)!;
      input.value = joinKeywords(element.descriptors[category] ?? []);
      this.hideError(category);
    }
  }

  clear(): void {
    this.current = null;
    this.heading.hidden = true;
    this.placeholder.hidden = false;
    this.form.hidden = true;
  }

  setBusy(busy: boolean): void {
    this.busy = busy;
    for (const input of this.inputs.values()) input.disabled = busy;
    for (const button of this.buttons.values()) button.disabled = busy;
  }

  /** Show a service rejection inline at the field that caused it. */
  showError(category: Category, message: string): void {
    const error = this.errors.get(category);
    if (!error) return;
    error.textContent = message;
    error.hidden = false;
  }

  private hideError(category: Category): void {
    const error = this.errors.get(category);
    if (!error) return;
    error.hidden = true;
    error.textContent = "";
  }
}

import type { Category, Database } from "./types";
import { databaseOf } from "./types";

// Display filters narrow which evidence rows are shown; they are pure
// visibility predicates and never trigger a service round trip. An empty
// subset means "no restriction".
export interface Filters {
  databases: Database[];
  categories: Category[];
  keyword: string;
}

// A displayable evidence row. Rollup-derived rows carry no category or
// keyword: an active category filter hides them, while the keyword filter
// also matches their identifier so they stay findable.
export interface FilterableRow {
  identifier: string;
  category?: string;
  keyword?: string;
}

export function emptyFilters(): Filters {
  return { databases: [], categories: [], keyword: "" };
}

export function rowMatches(filters: Filters, row: FilterableRow): boolean {
  if (filters.databases.length > 0) {
    const database = databaseOf(row.identifier);
    if (database === null || !filters.databases.includes(database)) return false;
  }
  if (filters.categories.length > 0) {
    if (row.category === undefined) return false;
    if (!filters.categories.includes(row.category as Category)) return false;
  }
  const needle = filters.keyword.trim().toLowerCase();
  if (needle) {
    const haystack = `${row.keyword ?? ""} ${row.identifier}`.toLowerCase();
    if (!haystack.includes(needle)) return false;
  }
  return true;
}

export function applyFilters<T extends FilterableRow>(rows: T[], filters: Filters): T[] {
  return rows.filter((row) => rowMatches(filters, row));
}

// Documents exchanged with the /api/v1 analysis service, mirrored
// field-for-field. The UI never derives analysis results of its own; every
// identifier it displays comes out of one of these documents.

export const CATEGORIES = [
  "operating_system",
  "device_name",
  "communication",
  "hardware",
  "firmware",
  "software",
  "entry_points",
] as const;

export type Category = (typeof CATEGORIES)[number];

export type Database = "CAPEC" | "CWE" | "CVE";

export const DATABASES: readonly Database[] = ["CAPEC", "CWE", "CVE"];

export function databaseOf(identifier: string): Database | null {
  for (const database of DATABASES) {
    if (identifier.startsWith(database + "-")) return database;
  }
  return null;
}

export interface AssetDoc {
  id: string;
  label: string;
  descriptors: Record<string, string[]>;
}

export interface EdgeDoc {
  id: string;
  source: string;
  target: string;
  directed: boolean;
  descriptors: Record<string, string[]>;
}

export interface ModelDoc {
  revision: number;
  directed_default: boolean;
  assets: AssetDoc[];
  edges: EdgeDoc[];
}

export interface SessionDoc {
  session_id: string;
  revision: number;
  corpus_ref: string;
  model: ModelDoc;
}

export interface EvidenceRecordDoc {
  element: string;
  element_kind: "asset" | "edge";
  category: string;
  keyword: string;
  attack_vector: string;
}

export interface TriggeringKeywordDoc {
  attack_vector: string;
  keyword: string;
}

export interface SurfaceEntryDoc {
  asset: string;
  label: string;
  triggering_keywords: TriggeringKeywordDoc[];
}

export interface RollupDoc {
  cves: string[];
  direct_cwes: string[];
  derived_cwes: string[];
  direct_capecs: string[];
  derived_capecs: string[];
}

export interface ResultRowDoc {
  element: string;
  label: string;
  attack_vector: string;
  description: string;
}

export interface ReportDoc {
  format: string;
  format_version: number;
  corpus_ref: string;
  ingested_at: string;
  model: { assets: number; edges: number; directed: boolean };
  evidence: EvidenceRecordDoc[];
  surface: SurfaceEntryDoc[];
  rollup: Record<string, RollupDoc>;
  results: ResultRowDoc[];
  chains: unknown;
}

export interface ChainEvidenceDoc {
  attack_vector: string;
  category: string;
  keyword: string;
}

export interface ChainElementDoc {
  ref: string;
  kind: "asset" | "edge";
  label: string;
  evidence: ChainEvidenceDoc[];
  rollup: RollupDoc;
}

export interface ChainDoc {
  source: string;
  target: string;
  path: string[];
  trivial: boolean;
  elements: ChainElementDoc[];
}

export interface ChainsDoc {
  corpus_ref: string;
  target: string;
  max_len: number;
  truncated: boolean;
  chains: ChainDoc[];
}

export interface EditDoc {
  revision: number;
  element: string;
  category: string;
  keywords: string[];
}

export interface CorpusEntryDoc {
  database: Database;
  identifier: string;
  name: string;
  description: string;
  related_attack_patterns: string[];
  related_vulnerabilities: string[];
  related_weaknesses: string[];
}

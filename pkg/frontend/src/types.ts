/** Payload types of the round-evaluation HTTP API. */

export interface TwoTupleJson {
  index: number;
  alpha: number;
  granularity: number;
  beta: number;
}

/** One table row of the results view; metric columns vary with the filter. */
export interface ResultRow {
  ordinal: number;
  description: string;
  dimension: string;
  is_index: number;
  is_alpha: number;
  is_beta: number;
  is_label: string;
  clarity_beta?: number;
  writing_beta?: number;
  presence_beta?: number;
  answering_scale_beta?: number;
  z_beta?: number;
  w_avg?: number;
  rho?: number[];
  ci?: number;
  cs?: boolean;
  ri?: number;
  rs?: boolean;
}

export interface QuestionnaireScores {
  collective_clarity: TwoTupleJson;
  collective_writing: TwoTupleJson;
  collective_presence: TwoTupleJson;
  collective_answering_scale: TwoTupleJson;
  questionnaire_score: TwoTupleJson;
  questionnaire_score_label: string;
}

export interface ResultsView {
  round: number;
  epsilon: number;
  filter: string;
  total: number;
  visible: number;
  hidden_count: number;
  all_consensual: boolean;
  average_relevance: number;
  questionnaire: QuestionnaireScores;
  rows: ResultRow[];
}

export interface ComparisonItem {
  ordinal: number;
  delta_score_beta: number;
  delta_ci: number;
  delta_ri: number;
  cs_a: boolean;
  cs_b: boolean;
  rs_a: boolean;
  rs_b: boolean;
  cs_flipped: boolean;
  rs_flipped: boolean;
}

export interface ComparisonView {
  schema: string;
  a_round: number;
  b_round: number;
  items: ComparisonItem[];
  questionnaire: {
    delta_collective_clarity: number;
    delta_collective_writing: number;
    delta_collective_presence: number;
    delta_collective_answering_scale: number;
    delta_questionnaire_score: number;
  };
  still_failing: number[];
  a_label: string;
  b_label: string;
}

export interface RoundReport {
  schema: string;
  round: number;
  epsilon: number;
  all_consensual: boolean;
  questionnaire: QuestionnaireScores;
}

/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_densitycurve_free: (a: number, b: number) => void;
export const __wbg_exactefp_free: (a: number, b: number) => void;
export const __wbg_sigmacurve_free: (a: number, b: number) => void;
export const density_curve: (a: number, b: number, c: number) => [number, number, number];
export const densitycurve_a: (a: number) => number;
export const densitycurve_b: (a: number) => number;
export const densitycurve_e: (a: number) => number;
export const densitycurve_mu: (a: number) => [number, number];
export const densitycurve_rho: (a: number) => [number, number];
export const densitycurve_scenario: (a: number) => [number, number];
export const exact_efp: (a: number, b: number, c: number, d: number) => [number, number, number];
export const exactefp_decimal: (a: number) => number;
export const exactefp_estimate: (a: number) => number;
export const exactefp_sigma: (a: number) => number;
export const exactefp_value: (a: number) => [number, number];
export const sigma_curve: (a: number, b: number) => [number, number, number];
export const sigmacurve_jump: (a: number) => number;
export const sigmacurve_r_c: (a: number) => number;
export const sigmacurve_sigma: (a: number) => [number, number];
export const sigmacurve_v: (a: number) => [number, number];
export const sigmacurve_v_c: (a: number) => number;
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;

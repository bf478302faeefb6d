/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_explorer_free: (a: number, b: number) => void;
export const explorer_argumentCount: (a: number) => number;
export const explorer_attackCount: (a: number) => number;
export const explorer_dot: (a: number, b: number, c: number) => [number, number, number, number];
export const explorer_explain: (a: number, b: number) => [number, number, number, number];
export const explorer_groundedLayout: (a: number) => [number, number];
export const explorer_new: (a: number, b: number, c: number, d: number) => [number, number, number];
export const explorer_solutionLayout: (a: number, b: number, c: number) => [number, number, number, number];
export const explorer_solutions: (a: number) => [number, number];
export const explorer_whatIf: (a: number, b: number, c: number) => [number, number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;

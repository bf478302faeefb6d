/* tslint:disable */
/* eslint-disable */

export class Explorer {
    free(): void;
    [Symbol.dispose](): void;
    argumentCount(): number;
    attackCount(): number;
    dot(index?: number | null, delta?: number | null): string;
    explain(index: number): string;
    groundedLayout(): string;
    constructor(text: string, format: string);
    solutionLayout(index: number, delta?: number | null): string;
    solutions(): string;
    whatIf(request: string): string;
}

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_explorer_free: (a: number, b: number) => void;
    readonly explorer_argumentCount: (a: number) => number;
    readonly explorer_attackCount: (a: number) => number;
    readonly explorer_dot: (a: number, b: number, c: number) => [number, number, number, number];
    readonly explorer_explain: (a: number, b: number) => [number, number, number, number];
    readonly explorer_groundedLayout: (a: number) => [number, number];
    readonly explorer_new: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly explorer_solutionLayout: (a: number, b: number, c: number) => [number, number, number, number];
    readonly explorer_solutions: (a: number) => [number, number];
    readonly explorer_whatIf: (a: number, b: number, c: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;

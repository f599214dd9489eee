#!/usr/bin/env node
// plot --kind <k> --in <path> --out <path>

import { KINDS, Kind, render } from "./plots";

function parseArgs(argv: string[]): { kind: Kind; input: string; output: string } {
  const args = argv[0] === "plot" ? argv.slice(1) : argv;
  const opts: Record<string, string> = {};
  for (let i = 0; i < args.length; i += 2) {
    const key = args[i];
    const val = args[i + 1];
    if (!key.startsWith("--") || val === undefined) {
      throw new Error(`usage: plot --kind <${KINDS.join("|")}> --in <path> --out <path>`);
    }
    opts[key.slice(2)] = val;
  }
  const kind = opts["kind"] as Kind;
  if (!KINDS.includes(kind)) {
    throw new Error(`--kind must be one of ${KINDS.join(", ")}, got ${opts["kind"]}`);
  }
  if (!opts["in"] || !opts["out"]) {
    throw new Error("--in and --out are required");
  }
  return { kind, input: opts["in"], output: opts["out"] };
}

export function main(argv: string[]): number {
  try {
    const { kind, input, output } = parseArgs(argv);
    render(kind, input, output);
    console.log(output);
    return 0;
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    return 1;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}

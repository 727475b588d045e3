#!/usr/bin/env python3
"""Regenerates schemas/*.schema.json from live CLI output.

Usage: tools/gen_schemas.py <path-to-chronoq-binary> <schemas-dir>
"""
import json
import subprocess
import sys
from pathlib import Path

COMMANDS = {
    "state": ["state", "--kind", "bell", "--label", "Phi+"],
    "entangle_chsh": ["entangle", "chsh", "--trials", "2000"],
    "entangle_werner": ["entangle", "werner", "--steps", "5"],
    "entangle_ppt": ["entangle", "ppt", "--F", "0.8"],
    "entropy_codec": ["entropy", "codec", "--n", "12", "--rate", "0.8"],
    "entropy_uncertainty": ["entropy", "uncertainty"],
    "entropy_typical": ["entropy", "typical", "--n", "12"],
    "swap": ["swap", "--pair", "Phi+"],
    "chain_demo": ["chain", "demo", "--records", "00,10,11"],
    "chain_tamper": ["chain", "tamper", "--records", "00,10,11"],
    "chain_contrast": ["chain", "contrast", "--blocks", "5", "--index", "2"],
    "consensus_run": ["consensus", "run", "--nodes", "4", "--rounds", "500", "--dishonest", "1"],
    "consensus_bounds": ["consensus", "bounds", "--nodes", "3", "--rounds", "200", "--samples", "3"],
    "consensus_admit": ["consensus", "admit", "--nodes", "3"],
    "game_monty_classic": ["game", "monty-classic", "--trials", "1000"],
    "game_monty_ignorant": ["game", "monty-ignorant", "--trials", "1000"],
    "game_unreliable_teleport": ["game", "unreliable-teleport", "--trials", "1000"],
    "game_monty_teleport": ["game", "monty-teleport", "--trials", "1000"],
    "game_pbr_ontic": ["game", "pbr-ontic", "--trials", "1000"],
    "game_pbr_epistemic": ["game", "pbr-epistemic", "--q", "1/4", "--trials", "1000"],
    "game_chsh": ["game", "chsh", "--trials", "1000"],
    "game_teleport": ["game", "teleport"],
    "game_superdense": ["game", "superdense"],
    "game_qkd": ["game", "qkd", "--bits", "64"],
    "gleason_roundtrip": ["gleason", "roundtrip", "--dim", "2", "--samples", "3", "--frames", "200"],
    "lg_k3": ["lg", "k3"],
    "lg_temporal_chsh": ["lg", "temporal-chsh"],
    "lg_entropic": ["lg", "entropic"],
}


def infer(value):
    if isinstance(value, bool):
        return {"type": "boolean"}
    if isinstance(value, int):
        return {"type": "integer"}
    if isinstance(value, float):
        return {"type": "number"}
    if isinstance(value, str):
        return {"type": "string"}
    if value is None:
        return {"type": "null"}
    if isinstance(value, list):
        schema = {"type": "array"}
        if value:
            schema["items"] = infer(value[0])
        return schema
    return {
        "type": "object",
        "properties": {k: infer(v) for k, v in value.items()},
        "required": list(value.keys()),
    }


def main():
    binary, out_dir = sys.argv[1], Path(sys.argv[2])
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, args in COMMANDS.items():
        proc = subprocess.run([binary, *args, "--json"], capture_output=True, text=True)
        if proc.returncode not in (0, 1):
            sys.exit(f"{name}: exit {proc.returncode}: {proc.stderr}")
        body = json.loads(proc.stdout)
        schema = {
            "$schema": "https://json-schema.org/draft/2020-12/schema",
            "title": body["command"],
            "description": "Example: chronoq " + " ".join(args),
            **infer(body),
        }
        (out_dir / f"{name}.schema.json").write_text(json.dumps(schema, indent=2) + "\n")


if __name__ == "__main__":
    main()

"""Regenerates data/bank.jsonl: hand-written questions plus seeded random walks.

Usage: python3 tools/build_bank.py path/to/eqproof > data/bank.jsonl
"""
import json
import subprocess
import sys

CURATED = [
    ("q1", "novice", "¬(¬p)", "p"),
    ("q3", "learner", "p→(q→r)", "(p∧q)→r"),
    ("q6", "novice", "¬p∧¬q", "¬(p∨q)"),
    ("q7", "learner", "¬(p∧¬q)∨q", "¬p∨q"),
    ("q9", "novice", "(p∨q)∧(p∨r)", "p∨(q∧r)"),
    ("taut-excluded-middle", "novice", "p∨¬p", "T"),
    ("fall-contradiction", "learner", "p∧¬(p∨q)", "F"),
]

# (target, steps, count, seed)
WALKS = [
    ("p∨q", 2, 3, 11),
    ("p→q", 2, 3, 12),
    ("¬(p∧q)", 2, 3, 13),
    ("p∧(q∨r)", 3, 3, 21),
    ("p↔q", 3, 3, 22),
    ("¬p∨q", 4, 3, 23),
    ("p∧q→r", 5, 3, 31),
    ("¬(p∨q)∧r", 5, 3, 32),
    ("(p→q)∧(q→p)", 6, 2, 33),
]


def main() -> None:
    tool = sys.argv[1]
    out = []
    for qid, level, premise, target in CURATED:
        out.append({"id": qid, "level": level, "premise": premise, "target": target, "origin": "curated"})
    for w, (target, steps, count, seed) in enumerate(WALKS):
        text = subprocess.run(
            [tool, "gen", "--target", target, "--steps", str(steps), "--count", str(count), "--seed", str(seed)],
            check=True, capture_output=True, text=True).stdout
        for k, line in enumerate(text.splitlines()):
            q = json.loads(line)
            q["id"] = f"gen-{w}-{k}"
            out.append(q)
    for q in out:
        print(json.dumps(q, ensure_ascii=False, sort_keys=True))


if __name__ == "__main__":
    main()

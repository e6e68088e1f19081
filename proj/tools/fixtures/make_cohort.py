#!/usr/bin/env python3
"""Writes the synthetic four-group cohort used by the integration tests.

Transcript wording is chosen so that the keyword rules of the mock backend
map each line to a known behaviour category. Output is fully determined by
the per-group parameters below and a fixed RNG seed.

    python3 tools/fixtures/make_cohort.py fixtures/cohort
"""
import json
import random
import sys
from pathlib import Path

LINES = {
    "understanding": [
        "What is the task asking us to produce?",
        "I think the title means we compare the two numbers.",
        "Do we understand what the requirement says about the output?",
        "The question wants the largest value, I believe.",
        "So the task is about reading three numbers from the user.",
        "What does it mean by the average here?",
    ],
    "planning": [
        "Maybe we read the values first and then compare them.",
        "Let's split it into two parts.",
        "How about we handle the empty case at the start?",
        "I have an idea, we can keep a running total.",
        "We should write the comparison after reading the numbers.",
        "First we collect everything, then we print the result.",
    ],
    "coding": [
        "Put a for loop over the numbers.",
        "Use append to add each value to the list.",
        "Call int( on the input before comparing.",
        "Write print( with the total at the end.",
        "Make a variable called best and update it in the loop.",
        "Define the function with two parameters.",
    ],
    "debugging": [
        "There is an error on line three.",
        "It says syntax error near the colon.",
        "The output is wrong when the numbers are equal.",
        "I think the indent is off in the last block.",
        "We need to fix the traceback about the missing name.",
        "It crashed again with the same exception.",
    ],
    "ack": [
        "Okay, that looks great.",
        "Yes, I agree with you.",
        "Nice, it printed the answer.",
        "Perfect, the test passed.",
        "Right, that makes sense.",
        "Good, we are done with this part.",
    ],
    "unrelated": [
        "Did you watch the movie last weekend?",
        "Haha, that is a funny joke.",
        "Where are you going for lunch?",
        "I stayed up late playing a game.",
        "Whatever, we can mess around later.",
    ],
}

INSTRUCTOR = {
    "low": ["Why did you choose that order?", "What do you think happens with negative numbers?",
            "How would you check the result by hand?"],
    "medium": ["You need to convert the input first.", "Try printing the list after each step.",
               "Look at the condition inside your loop.", "Remember that the range stops one early."],
    "high": ["Let me walk you through it. First read each number with input and convert it with int, store the "
             "values in a list, then loop over that list keeping the largest value seen so far in a variable, "
             "compare every element against it, replace it when the element is larger, and finally print the "
             "variable once the loop has finished so the answer appears exactly one time."],
    "meta": ["How is your group doing so far?", "Good progress, keep going.", "Are you close to finishing?"],
}

QUESTIONS = {
    "1": "Read two integers and print the larger one.",
    "2": "Read a list of numbers and print their sum.",
    "3": "Print every even number between 1 and n.",
    "4": "Read three words and print them in alphabetical order.",
    "5": "Read numbers until 0 is entered and print their average.",
}

CODE = {
    "strong": """def largest(values):
    best = values[0]
    for v in values:
        if v > best:
            best = v
    return best

nums = [int(input()) for _ in range(3)]
print(largest(nums))
""",
    "solid": """nums = []
for i in range(3):
    nums.append(int(input()))
best = nums[0]
for v in nums:
    if v > best:
        best = v
print(best)
""",
    "plain": """a = int(input())
b = int(input())
if a > b:
    print(a)
else:
    print(b)
""",
    "weak": """values = eval(input())
total = sum(values)
print(total)
""",
    "broken": """a = input()
# TODO finish the comparison
""",
}

# mix: relative weights per behaviour for every question (q1 may override).
GROUPS = {
    "G06": {
        "students": [("0601", "Economics", 58.0), ("0602", "History", 62.0), ("0603", "Art", 55.0)],
        "speaker_weights": [5, 2, 1],
        "mix": {"understanding": 3, "planning": 1, "coding": 1, "debugging": 1, "ack": 2, "unrelated": 6},
        "q1_mix": None,
        "utterances": 14,
        "instructor": ["high", "high", "medium"],
        "code": ["weak", "broken", "plain", "weak", "broken"],
        "media": False,
    },
    "G10": {
        "students": [("1001", "Computer Science", 81.0), ("1002", "Mathematics", 77.0), ("1003", "Physics", 79.0)],
        "speaker_weights": [4, 3, 3],
        "mix": {"understanding": 2, "planning": 3, "coding": 4, "debugging": 2, "ack": 3, "unrelated": 1},
        "q1_mix": {"understanding": 3, "planning": 4, "coding": 4, "debugging": 1, "ack": 3, "unrelated": 1},
        "utterances": 22,
        "instructor": ["low", "meta"],
        "code": ["strong", "solid", "strong", "solid", "plain"],
        "media": True,
    },
    "G18": {
        "students": [("1801", "Computer Science", 80.0), ("1802", "Statistics", 78.0), ("1803", "Physics", 80.0)],
        "speaker_weights": [4, 3, 3],
        "mix": {"understanding": 2, "planning": 3, "coding": 4, "debugging": 2, "ack": 3, "unrelated": 1},
        "q1_mix": {"understanding": 2, "planning": 3, "coding": 3, "debugging": 6, "ack": 2, "unrelated": 1},
        "utterances": 22,
        "instructor": ["low", "meta"],
        "code": ["strong", "solid", "strong", "solid", "plain"],
        "media": False,
    },
    "G20": {
        "students": [("2001", "Engineering", 70.0), ("2002", "Biology", 66.0), ("2003", "Chemistry", 72.0)],
        "speaker_weights": [3, 3, 3],
        "mix": {"understanding": 2, "planning": 2, "coding": 3, "debugging": 3, "ack": 2, "unrelated": 1},
        "q1_mix": None,
        "utterances": 18,
        "instructor": ["medium", "medium", "low"],
        # Tuned so that the collaboration quality lands on 3.88.
        "code": ["solid", "solid", "plain", "plain", "strong"],
        "media": False,
    },
}


def fmt(t):
    return f"{t:.1f}"


def write_group(root: Path, gid: str, spec: dict, rng: random.Random) -> None:
    d = root / gid
    (d / "code").mkdir(parents=True, exist_ok=True)
    roster = {"schema_version": 1, "group_id": gid,
              "students": [{"id": i, "major": m, "prior_score": p} for i, m, p in spec["students"]]}
    (d / "roster.json").write_text(json.dumps(roster, indent=2) + "\n")

    ids = [s[0] for s in spec["students"]]
    lines = []
    t = 0.0
    for q in range(1, 6):
        driver = ids[(q - 1) % 3]
        lines.append(f"Question{q} Driver: {driver}")
        mix = spec["q1_mix"] if q == 1 and spec["q1_mix"] else spec["mix"]
        cats = list(mix)
        weights = [mix[c] for c in cats]
        n = spec["utterances"]
        instructor_at = {rng.randrange(2, n): kind for kind in spec["instructor"]}
        for i in range(n):
            if i in instructor_at:
                text = rng.choice(INSTRUCTOR[instructor_at[i]])
                speaker = "0000"
            else:
                text = rng.choice(LINES[rng.choices(cats, weights)[0]])
                speaker = rng.choices(ids, spec["speaker_weights"])[0]
            dur = round(rng.uniform(3.0, 9.0), 1)
            lines.append(f"{fmt(t)} {fmt(t + dur)} {speaker} {text}")
            t = round(t + dur + rng.uniform(0.5, 2.0), 1)
        t += 30.0
    (d / "transcript.txt").write_text("\n".join(lines) + "\n")

    for q, kind in enumerate(spec["code"], start=1):
        (d / "code" / f"q{q}.py").write_text(CODE[kind])
    if spec["media"]:
        # Placeholder bytes standing in for a recording; only served, never decoded.
        (d / "media.mp4").write_bytes(bytes(range(256)) * 64)


def main() -> None:
    root = Path(sys.argv[1] if len(sys.argv) > 1 else "fixtures/cohort")
    root.mkdir(parents=True, exist_ok=True)
    (root / "questions.json").write_text(json.dumps({"schema_version": 1, "questions": QUESTIONS}, indent=2) + "\n")
    for gid, spec in GROUPS.items():
        write_group(root, gid, spec, random.Random(f"cohort/{gid}/{spec.get('seed', 0)}"))


if __name__ == "__main__":
    main()

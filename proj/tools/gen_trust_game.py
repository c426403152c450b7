#!/usr/bin/env python3
"""Generates fixtures/trust_game.json: the one-shot trust game with goals and intentions."""
import json
import sys
from pathlib import Path

ALICE_GOALS = ("passive", "active")
BOB_GOALS = ("investor", "opportunist")


def state(sid, a_alice="_", a_bob="_", g_alice=None, g_bob=None, i_bob=None, **extra):
    s = {"id": sid, "locals": {"aAlice": a_alice, "aBob": a_bob}}
    goals, intn = {}, {}
    if g_alice:
        goals["Alice"] = [g_alice]
        intn["Alice"] = g_alice
    if g_bob:
        goals["Bob"] = [g_bob]
    if i_bob:
        intn["Bob"] = i_bob
    if goals:
        s["goals"] = goals
    if intn:
        s["intention"] = intn
    labels = set(extra.pop("labels", []))
    if g_alice == "active":
        labels.add("activeAlice")
    if labels:
        s["labels"] = sorted(labels)
    s.update(extra)
    return s


def build():
    states, trans = [], []
    states.append(state("s0", legal_goals={"Alice": [["passive"], ["active"]]}))
    n = 1
    level1 = {}
    for ga in ALICE_GOALS:
        sid = f"s{n}"; n += 1
        level1[ga] = sid
        states.append(state(sid, g_alice=ga, legal_goals={"Bob": [["investor"], ["opportunist"]]}))
    level2 = {}
    for ga in ALICE_GOALS:
        for gb in BOB_GOALS:
            sid = f"s{n}"; n += 1
            level2[(ga, gb)] = sid
            states.append(state(sid, g_alice=ga, g_bob=gb))
    invested = {}
    for ga in ALICE_GOALS:
        for gb in BOB_GOALS:
            src = level2[(ga, gb)]
            w, i = f"s{n}", f"s{n + 1}"; n += 2
            states.append(state(w, "withhold", g_alice=ga, g_bob=gb, labels=["richerAliceBob"]))
            states.append(state(i, "invest", g_alice=ga, g_bob=gb,
                                legal_intentions={"Bob": ["share", "keep"]}))
            invested[(ga, gb)] = i
            trans.append({"from": src, "action": {"Alice": "withhold"}, "to": {w: "1"}})
            trans.append({"from": src, "action": {"Alice": "invest"}, "to": {i: "1"}})
    intended = []
    for ga in ALICE_GOALS:
        for gb in BOB_GOALS:
            for ib in ("share", "keep"):
                sid = f"s{n}"; n += 1
                states.append(state(sid, "invest", g_alice=ga, g_bob=gb, i_bob=ib))
                intended.append((sid, ga, gb, ib))
    for sid, ga, gb, ib in intended:
        k, s = f"s{n}", f"s{n + 1}"; n += 2
        states.append(state(k, "invest", "keep", g_alice=ga, g_bob=gb, i_bob=ib,
                            labels=["richerBobAlice", "profitBob"]))
        states.append(state(s, "invest", "share", g_alice=ga, g_bob=gb, i_bob=ib, labels=["profitBob"]))
        trans.append({"from": sid, "action": {"Bob": "keep"}, "to": {k: "1"}})
        trans.append({"from": sid, "action": {"Bob": "share"}, "to": {s: "1"}})
    assert n == 39, n

    doc = {
        "format": 1,
        "name": "trust_game",
        "agents": [
            {"name": "Alice", "actions": ["invest", "withhold"], "goals": list(ALICE_GOALS),
             "intentions": list(ALICE_GOALS),
             "intention_follows_goal": [{"goals": [g], "intention": g} for g in ALICE_GOALS]},
            {"name": "Bob", "actions": ["share", "keep"], "goals": list(BOB_GOALS),
             "intentions": ["share", "keep"]},
        ],
        "propositions": ["activeAlice", "profitBob", "richerAliceBob", "richerBobAlice"],
        "states": states,
        "initial": {"s0": "1"},
        "transitions": trans,
        "cognitive_edges": "all-legal",
        "observations": {
            "Alice": {"components": ["aAlice", "aBob", "goal.Alice", "intn.Alice"]},
            "Bob": {"components": ["aAlice", "aBob", "goal.Bob", "intn.Bob"]},
        },
        "action_strategies": {
            "Alice": {"passive": {"default": {"withhold": "7/10", "invest": "3/10"}},
                      "active": {"default": {"withhold": "1/10", "invest": "9/10"}}},
            "Bob": {"share": {"default": {"share": "1"}}, "keep": {"default": {"keep": "1"}}},
        },
        "preferences": [
            {"holder": "Bob", "over": "Alice", "kind": "goal", "states": ["s0"],
             "dist": {"{passive}": "1/3", "{active}": "2/3"}},
            {"holder": "Alice", "over": "Bob", "kind": "goal", "states": [level1[g] for g in ALICE_GOALS],
             "dist": {"{investor}": "1/2", "{opportunist}": "1/2"}},
            {"holder": "Alice", "over": "Bob", "kind": "intention",
             "states": [invested[(g, "investor")] for g in ALICE_GOALS],
             "dist": {"share": "3/4", "keep": "1/4"}},
            {"holder": "Alice", "over": "Bob", "kind": "intention",
             "states": [invested[(g, "opportunist")] for g in ALICE_GOALS],
             "dist": {"share": "0", "keep": "1"}},
        ],
        "guards": {
            "Bob": {"intention": [
                {"intention": "share", "goals": ["investor"], "guard": "B{Bob}>0.7 [ activeAlice ]"},
                {"intention": "keep", "goals": ["investor"], "guard": "!B{Bob}>0.7 [ activeAlice ]"},
                {"intention": "share", "goals": ["opportunist"], "guard": "false"},
                {"intention": "keep", "goals": ["opportunist"], "guard": "true"},
            ]}
        },
        "mode": {"strict_deterministic": False, "cross_type_weighting": False},
    }
    return doc


def main():
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "fixtures" / "trust_game.json"
    out.write_text(json.dumps(build(), indent=1) + "\n")


if __name__ == "__main__":
    main()

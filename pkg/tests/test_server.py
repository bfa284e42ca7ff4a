"""HTTP service: sessions, moves, hints, undo, error statuses."""

import json

import pytest
from fastapi.testclient import TestClient

from floodlab.reductions import tight_path
from floodlab.serialize import dump_instance
from floodlab.server import create_app
from floodlab.solver import solve_fixed_exact


@pytest.fixture()
def client():
    return TestClient(create_app())


def new_game(client, instance_obj):
    response = client.post("/game", json=instance_obj)
    assert response.status_code == 200
    return response.json()


def test_new_game_on_flooded_instance(client):
    view = new_game(client, {"vertices": 2, "edges": [[0, 1]], "colors": [1, 1]})
    assert view["flooded"] is True
    assert view["moves_played"] == 0


def test_unknown_session_404(client):
    assert client.get("/game/nope").status_code == 404
    assert client.post("/game/nope/move", json={"v": 0, "c": 1}).status_code == 404


def test_malformed_instance_422(client):
    assert client.post("/game", json={"vertices": 2, "colors": [1]}).status_code == 422


def test_illegal_move_422_names_clause(client):
    view = new_game(client, dump_instance(tight_path(2)))
    token = view["token"]
    bad = client.post(f"/game/{token}/move", json={"set": [0, 1], "c": 2})
    assert bad.status_code == 422
    assert bad.json()["detail"]["clause"] == "monochromatic"
    bad2 = client.post(f"/game/{token}/move", json={"v": 99, "c": 1})
    assert bad2.status_code == 422


def test_moves_and_undo_round_trip(client):
    view = new_game(client, dump_instance(tight_path(1)))
    token = view["token"]
    moved = client.post(f"/game/{token}/move", json={"v": 1, "c": 1}).json()
    assert moved["flooded"] is True
    assert moved["moves_played"] == 1
    undone = client.post(f"/game/{token}/undo").json()
    assert undone["moves_played"] == 0
    assert undone["colors"] == view["colors"]
    # undo on the initial state is a no-op
    again = client.post(f"/game/{token}/undo").json()
    assert again == undone


def test_get_reconstructs_identical_view(client):
    view = new_game(client, dump_instance(tight_path(2)))
    token = view["token"]
    client.post(f"/game/{token}/move", json={"v": 0, "c": 2})
    a = client.get(f"/game/{token}")
    b = client.get(f"/game/{token}")
    assert a.content == b.content


def test_fixed_hints_flood_tight_path_in_exactly_four(client):
    inst = tight_path(2)
    assert solve_fixed_exact(inst, 0).value == 4
    view = new_game(client, dump_instance(inst))
    token = view["token"]
    pivot_color_start = view["colors"][0]
    moves = 0
    first_color = None
    while not view["flooded"]:
        hint = client.post(f"/game/{token}/hint?mode=fixed").json()
        assert hint["exact"] is True
        assert hint["move"]["v"] == 0
        if first_color is None:
            first_color = hint["move"]["c"]
        view = client.post(f"/game/{token}/move", json=hint["move"]).json()
        moves += 1
        assert moves <= 4
    assert moves == 4
    assert first_color != pivot_color_start


def test_hint_remaining_matches_exact_value(client):
    inst = tight_path(2)
    view = new_game(client, dump_instance(inst))
    token = view["token"]
    hint = client.post(f"/game/{token}/hint?mode=fixed").json()
    assert hint["remaining"] == 4
    free_hint = client.post(f"/game/{token}/hint?mode=free").json()
    assert free_hint["remaining"] == 2


def test_hint_on_flooded_game(client):
    view = new_game(client, {"vertices": 1, "edges": [], "colors": [1]})
    hint = client.post(f"/game/{view['token']}/hint?mode=free").json()
    assert hint == {"move": None, "remaining": 0, "exact": True,
                    "status": "optimal"}


def test_fixed_hint_without_pivot_is_422(client):
    view = new_game(client, {"vertices": 2, "edges": [[0, 1]], "colors": [1, 2]})
    response = client.post(f"/game/{view['token']}/hint?mode=fixed")
    assert response.status_code == 422


def test_hint_budget_fallback_marks_inexact(client, monkeypatch):
    monkeypatch.setenv("FLOODLAB_BUDGET_MS", "0")
    view = new_game(client, dump_instance(tight_path(3)))
    token = view["token"]
    hint = client.post(f"/game/{token}/hint?mode=fixed").json()
    assert hint["exact"] is False
    assert hint["status"] in ("budget_exhausted", "bound_proved")
    assert hint["move"] is not None


def test_concurrent_sessions_and_moves_stay_consistent(client):
    import threading
    tokens = [new_game(client, dump_instance(tight_path(2)))["token"]
              for _ in range(4)]
    errors = []

    def hammer(token):
        try:
            for _ in range(12):
                client.post(f"/game/{token}/move", json={"v": 0, "c": 2})
                client.post(f"/game/{token}/move", json={"v": 0, "c": 1})
                client.post(f"/game/{token}/undo")
        except Exception as exc:  # noqa: BLE001 - collected for the assert
            errors.append(exc)

    threads = [threading.Thread(target=hammer, args=(t,)) for t in tokens
               for _ in range(2)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert not errors
    for token in tokens:
        view = client.get(f"/game/{token}").json()
        # every move/undo above kept the stack well-formed
        assert view["moves_played"] >= 0
        assert len(view["colors"]) == 5


def test_hint_sequence_replays_through_validation(client):
    from floodlab.core import Move, Solution, validate_sequence
    inst = tight_path(2)
    view = new_game(client, dump_instance(inst))
    token = view["token"]
    played = []
    while not view["flooded"]:
        hint = client.post(f"/game/{token}/hint?mode=fixed").json()
        played.append(Move(hint["move"]["v"], hint["move"]["c"]))
        view = client.post(f"/game/{token}/move", json=hint["move"]).json()
    report = validate_sequence(inst, Solution("fixed", played), 0)
    assert report.valid and report.length == 4

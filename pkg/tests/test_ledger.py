from spheremat.ledger import all_entries, run_ledger


def test_every_entry_passes():
    results = run_ledger()
    assert results, "ledger must not be empty"
    for r in results:
        assert r.ok, f"{r.key}: {r.detail}"


def test_entries_have_unique_keys_and_claims():
    entries = all_entries()
    keys = [e.key for e in entries]
    assert len(keys) == len(set(keys))
    assert all(e.claim for e in entries)

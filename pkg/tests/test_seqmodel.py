import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import model_grad_error
from vaxsent import synth
from vaxsent.nncore import rng
from vaxsent.seqmodel import (LstmParams, ModelFormatError, ModelState, SequenceBatch, TrainConfig,
                              TrainingDiverged, bilstm_forward, build_vocab, encode, encode_batch,
                              load_model, lstm_cell, lstm_forward, one_hot, predict, predict_proba,
                              save_model, train, train_test_split)
from vaxsent.seqmodel.io import dumps, loads
from vaxsent.seqmodel.model import argmax_label
from vaxsent.vader import Polarity


def zero_cell(hidden=3, input_size=2):
    z = np.zeros((hidden, hidden + input_size))
    b = np.zeros(hidden)
    return LstmParams(z, z.copy(), z.copy(), z.copy(), b, b.copy(), b.copy(), b.copy())


def test_vocab_ranking():
    v = build_vocab([["a", "b"], ["b", "c"]], max_size=10)
    assert v.tokens == ["<pad>", "<oov>", "b", "a", "c"]
    assert build_vocab([["x"]], max_size=3).tokens == ["<pad>", "<oov>", "x"]
    assert build_vocab([["A", "b", "a"]], max_size=3).tokens == ["<pad>", "<oov>", "a"]


def test_vocab_errors():
    with pytest.raises(ValueError):
        build_vocab([], 10)
    with pytest.raises(ValueError):
        build_vocab([["a"]], 2)


def test_encode_rules():
    v = build_vocab([["a", "b"], ["b", "c"]], max_size=10)
    assert encode(["b", "a"], v, 4).tolist() == [0, 0, 2, 3]
    assert encode(["zzz"], v, 2).tolist() == [0, 1]
    assert encode(["a", "b", "c", "a", "B", "c"], v, 4).tolist() == [4, 3, 2, 4]


@given(st.lists(st.lists(st.sampled_from("abcdefg"), max_size=6), min_size=1, max_size=20))
def test_vocab_indices_contiguous(corpus):
    if not any(corpus):
        return
    v = build_vocab(corpus, max_size=6)
    assert sorted(v.index.values()) == list(range(len(v)))
    assert len(v) <= 6
    for doc in corpus:
        assert all(0 < i < len(v) for i in encode(doc, v, 8) if i)


def test_cell_zero_weights():
    h, c = lstm_cell(np.ones(2), np.zeros(3), np.zeros(3), zero_cell())
    np.testing.assert_array_equal(h, 0)
    np.testing.assert_array_equal(c, 0)
    v = np.array([0.3, -2.0, 5.0])
    h, c = lstm_cell(np.ones(2), np.zeros(3), v, zero_cell())
    np.testing.assert_allclose(c, 0.5 * v, atol=1e-15)
    np.testing.assert_allclose(h, 0.5 * np.tanh(0.5 * v), atol=1e-15)


def _scalar_cell(x, h, c, p):
    # one step written out with plain floats, independent of numpy
    z = list(h) + list(x)
    sig = lambda a: 1 / (1 + math.exp(-a))

    def gate(W, b, act):
        return [act(sum(W[r][k] * z[k] for k in range(len(z))) + b[r]) for r in range(len(b))]

    i = gate(p.W_i.tolist(), p.b_i.tolist(), sig)
    f = gate(p.W_f.tolist(), p.b_f.tolist(), sig)
    g = gate(p.W_c.tolist(), p.b_c.tolist(), math.tanh)
    o = gate(p.W_o.tolist(), p.b_o.tolist(), sig)
    c_t = [f[r] * c[r] + i[r] * g[r] for r in range(len(c))]
    return [o[r] * math.tanh(c_t[r]) for r in range(len(c))], c_t


@pytest.mark.parametrize("seed", range(5))
def test_cell_matches_scalar_oracle(seed):
    gen = rng(seed)
    p = LstmParams.init(gen, 4, 3)
    p.b_i[:] = gen.normal(size=3)
    x, h, c = gen.normal(size=4), gen.normal(size=3) * 0.5, gen.normal(size=3)
    h_t, c_t = lstm_cell(x, h, c, p)
    h_o, c_o = _scalar_cell(x, h, c, p)
    np.testing.assert_allclose(h_t, h_o, rtol=0, atol=1e-12)
    np.testing.assert_allclose(c_t, c_o, rtol=0, atol=1e-12)


def test_cell_dimension_mismatch():
    with pytest.raises(ValueError):
        lstm_cell(np.ones(3), np.zeros(3), np.zeros(3), zero_cell())


def test_batched_forward_matches_cell():
    gen = rng(2)
    p = LstmParams.init(gen, 4, 3)
    x = gen.normal(size=(1, 5, 4))
    hs, h_final, _ = lstm_forward(x, np.ones((1, 5)), p)
    h, c = np.zeros(3), np.zeros(3)
    for t in range(5):
        h, c = lstm_cell(x[0, t], h, c, p)
        np.testing.assert_allclose(hs[0, t], h, atol=1e-12)
    np.testing.assert_allclose(h_final[0], h, atol=1e-12)


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_hidden_state_bounded(seed):
    gen = rng(seed)
    p = LstmParams.init(gen, 3, 4)
    for W in (p.W_i, p.W_f, p.W_c, p.W_o):
        W *= 10
    hs, _, _ = lstm_forward(gen.normal(size=(2, 7, 3)) * 10, np.ones((2, 7)), p)
    assert np.all(np.abs(hs) < 1)


@pytest.mark.parametrize("kind", ["lstm", "bilstm"])
def test_prepended_padding_changes_nothing(kind):
    state = ModelState.init(kind, 30, 6, 5, seed=1, dtype=np.float64)
    seqs = rng(4).integers(1, 30, size=(6, 7))
    padded = np.concatenate([np.zeros((6, 5), dtype=np.int64), seqs], axis=1)
    np.testing.assert_allclose(predict_proba(state, padded), predict_proba(state, seqs), atol=1e-14)
    # mixed lengths inside one batch
    seqs[0, :4] = 0
    alone = predict_proba(state, seqs[:1, 4:])
    np.testing.assert_allclose(predict_proba(state, seqs)[:1], alone, atol=1e-14)


def test_bilstm_reversal_symmetry():
    gen = rng(6)
    p = LstmParams.init(gen, 4, 3)
    x = gen.normal(size=(2, 5, 4))
    mask = np.ones((2, 5))
    fwd_on_reversed, _, _ = lstm_forward(x[:, ::-1], mask, p)
    bwd, _, _ = lstm_forward(x, mask, p, reverse=True)
    np.testing.assert_allclose(fwd_on_reversed, bwd[:, ::-1], atol=1e-14)

    state = ModelState.init("bilstm", 20, 4, 3, seed=2, dtype=np.float64)
    state.backward_cell = LstmParams(**{k: v.copy() for k, v in state.forward_cell.named().items()})
    seq = np.array([3, 7, 1, 9, 4])
    rep, flag = bilstm_forward(seq, state)
    rep_rev, _ = bilstm_forward(seq[::-1], state)
    assert not flag
    np.testing.assert_allclose(rep_rev, np.concatenate([rep[3:], rep[:3]]), atol=1e-14)


def test_bilstm_representation():
    state = ModelState.init("bilstm", 20, 4, 8, seed=0, dtype=np.float64)
    rep, flag = bilstm_forward([0, 5, 6], state)
    assert rep.shape == (16,) and not flag
    rep, flag = bilstm_forward([0, 0, 0], state)
    assert flag and np.all(rep == 0)
    with pytest.raises(ValueError):
        bilstm_forward([1], ModelState.init("lstm", 20, 4, 8))


def test_model_invariants():
    s = ModelState.init("lstm", 10, 4, 3)
    assert s.backward_cell is None and s.W_out.shape == (3, 3)
    b = ModelState.init("bilstm", 10, 4, 3)
    assert b.backward_cell is not None and b.W_out.shape == (3, 6)
    with pytest.raises(ValueError):
        ModelState(kind="bilstm", embedding=s.embedding, forward_cell=s.forward_cell,
                   W_out=s.W_out, b_out=s.b_out)


@pytest.mark.parametrize("kind", ["lstm", "bilstm"])
def test_full_model_gradients(kind):
    assert model_grad_error(kind) < 1e-4


def test_split_sizes():
    train_, test_ = train_test_split(list(range(4)), 0.25)
    assert (len(train_), len(test_)) == (3, 1)
    a, b = train_test_split(list(range(125_906)), 0.25, seed=0)
    assert (len(a), len(b)) == (94_429, 31_477)
    with pytest.raises(ValueError):
        train_test_split([], 0.25)
    with pytest.raises(ValueError):
        train_test_split([1, 2], 1.0)


@given(st.lists(st.integers(), min_size=1, max_size=200), st.floats(0.01, 0.99), st.integers(0, 99))
def test_split_is_partition(items, frac, seed):
    a, b = train_test_split(items, frac, seed)
    assert sorted(a + b) == sorted(items)
    assert len(b) == math.ceil(len(items) * frac)


def test_untrained_zero_head_is_neutral():
    state = ModelState.init("lstm", 10, 4, 3)
    state.W_out[:] = 0
    state.vocab = build_vocab([["vaccine"]], 10)
    label, probs = predict(state, "vaccine today", maxlen=5)
    np.testing.assert_allclose(probs, [1 / 3] * 3, atol=1e-7)
    assert label is Polarity.NEUTRAL
    assert argmax_label(np.array([0.4, 0.4, 0.2])) == 0


def test_empty_text_is_neutral_even_when_trained():
    state = ModelState.init("lstm", 10, 4, 3)
    state.b_out[:] = [0.0, 0.0, 5.0]
    state.vocab = build_vocab([["vaccine"]], 10)
    label, _ = predict(state, "!!! ...", maxlen=5)
    assert label is Polarity.NEUTRAL


def _planted(n=600, seed=0, maxlen=20):
    docs, labels = synth.planted_task(n=n, seed=seed)
    vocab = build_vocab(docs, 100)
    return vocab, SequenceBatch(encode_batch(docs, vocab, maxlen), one_hot(labels))


SMALL = dict(epochs=3, batch_size=32, maxlen=20, embed_dim=8, hidden=8, vocab_size=100, lr=1e-2)


def test_training_is_deterministic():
    vocab, data = _planted()
    cfg = TrainConfig(**SMALL, seed=5)
    a = train(data, cfg, vocab=vocab)
    b = train(data, cfg, vocab=vocab)
    assert a.history == b.history
    assert dumps(a) == dumps(b)


@pytest.mark.parametrize("kind", ["lstm", "bilstm"])
def test_first_epoch_beats_initial_loss(kind):
    from vaxsent.seqmodel.train import evaluate_loss
    vocab, data = _planted()
    cfg = TrainConfig(kind=kind, **{**SMALL, "epochs": 1}, seed=1, dtype="float64")
    initial = ModelState.init(kind, len(vocab), cfg.embed_dim, cfg.hidden, seed=1, vocab=vocab)
    loss0, _ = evaluate_loss(initial, data)
    trained = train(data, cfg, vocab=vocab)
    loss1, _ = evaluate_loss(trained, data)
    assert trained.history[0]["loss"] < loss0 and loss1 < loss0


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
def test_divergence_aborts():
    vocab, data = _planted(n=200)
    with pytest.raises(TrainingDiverged):
        train(data, TrainConfig(**{**SMALL, "lr": 1e300}), vocab=vocab)


def test_planted_model_predicts_planted_token():
    vocab, data = _planted(n=1000)
    state = train(data, TrainConfig(**{**SMALL, "epochs": 15}, seed=0), vocab=vocab)
    assert state.history[-1]["accuracy"] > 0.9
    label, _ = predict(state, "w1 w2 pos w3 w4")
    assert label is Polarity.POSITIVE
    label, _ = predict(state, "w1 neg w3")
    assert label is Polarity.NEGATIVE


@pytest.mark.parametrize("kind", ["lstm", "bilstm"])
def test_save_load_round_trip(tmp_path, kind):
    vocab, data = _planted(n=200)
    state = train(data, TrainConfig(kind=kind, **{**SMALL, "epochs": 1}), vocab=vocab)
    p1, p2 = tmp_path / "a.bin", tmp_path / "b.bin"
    save_model(state, p1)
    loaded = load_model(p1)
    save_model(loaded, p2)
    assert p1.read_bytes() == p2.read_bytes()
    assert (loaded.backward_cell is not None) == (kind == "bilstm")
    for name, arr in state.parameters().items():
        assert arr.tobytes() == loaded.parameters()[name].tobytes()
    seqs = encode_batch(synth.planted_task(n=100, seed=9)[0], vocab, 20)
    assert predict_proba(state, seqs).tobytes() == predict_proba(loaded, seqs).tobytes()
    assert loaded.history == state.history and loaded.seed == state.seed


def test_load_rejects_damage():
    state = ModelState.init("lstm", 10, 4, 3, vocab=build_vocab([["a"]], 10))
    blob = dumps(state)
    with pytest.raises(ModelFormatError):
        loads(blob[:-10])
    with pytest.raises(ModelFormatError):
        loads(b"XXXXXXXX" + blob[8:])
    with pytest.raises(ModelFormatError):
        loads(blob[:8] + (99).to_bytes(4, "little") + blob[12:])
    flipped = bytearray(blob)
    flipped[-1] ^= 0xFF
    with pytest.raises(ModelFormatError):
        loads(bytes(flipped))

"""Shared harnesses for the unit and acceptance suites."""
import numpy as np

from vaxsent.nncore import grad_check, rng
from vaxsent.seqmodel import ModelState, SequenceBatch, loss_and_grads, one_hot


def model_grad_error(kind, seed=3, vocab=20, embed=4, hidden=5, seq_len=6, batch=4):
    """Max relative error of the full model gradient against central differences (float64)."""
    state = ModelState.init(kind, vocab, embed, hidden, seed=seed, dtype=np.float64)
    gen = rng(7)
    seqs = gen.integers(1, vocab, size=(batch, seq_len))
    seqs[0, :2] = 0  # some padding so the mask path is exercised
    data = SequenceBatch(seqs, one_hot(gen.integers(0, 3, size=batch)))
    params = state.parameters()
    _, grads, _ = loss_and_grads(state, data)
    names = list(params)
    flat = np.concatenate([params[k].ravel() for k in names])
    analytic = np.concatenate([grads[k].ravel() for k in names])

    def f(vec):
        off = 0
        for k in names:
            p = params[k]
            p[...] = vec[off:off + p.size].reshape(p.shape)
            off += p.size
        loss, _, _ = loss_and_grads(state, data)
        return loss

    err = grad_check(f, analytic, flat)
    f(flat)
    return err

"""Training objectives of a skill model with their analytic gradients.

Every `*_and_grad` function returns the scalar loss together with gradients
for the nets the objective trains; the plain variants return only the value.
"""
from typing import NamedTuple, Optional, Tuple

import numpy as np

from SkillComposer.Approx import Net, ParamVector
from SkillComposer.Exceptions.Exceptions import NonFiniteError
from .QTarget import ActionSampler, q_targets
from .Replay import TransitionBatch
from .SkillModel import LOGVAR_BOUND, SkillModel, sigmoid

LOG_2PI = np.log(2.0 * np.pi)


class VaeLoss(NamedTuple):
    loss: float
    reconstruction: float
    kl: float
    encoder_grad: ParamVector
    decoder_grad: ParamVector


def kl_divergence(mu: np.ndarray, logvar: np.ndarray) -> float:
    """Batch mean of KL(N(mu, exp(logvar)) || N(0, I))."""
    mu = np.atleast_2d(mu)
    logvar = np.atleast_2d(logvar)
    return float(0.5 * np.sum(mu * mu + np.exp(logvar) - 1.0 - logvar) / mu.shape[0])


def gaussian_nll(x_hat: np.ndarray, x: np.ndarray, sigma: float) -> float:
    """Batch mean negative log-likelihood of x under N(x_hat, sigma^2 I)."""
    n, d = x.shape
    diff = x_hat - x
    return float(0.5 * np.sum(diff * diff) / (sigma * sigma) / n + d * (np.log(sigma) + 0.5 * LOG_2PI))


def vae_loss_and_grad(model: SkillModel, features: np.ndarray, eps: np.ndarray) -> VaeLoss:
    """Negative ELBO of a feature batch with the reparameterization noise `eps` held fixed."""
    x = np.atleast_2d(np.asarray(features, dtype=np.float64))
    if x.shape[0] == 0:
        raise ValueError("vae_loss needs a non-empty batch")
    n = x.shape[0]
    latent = model.latent_dim
    sigma2 = model.recon_sigma ** 2

    out, enc_cache = model.encoder.forward_cache(x)
    mu = out[:, :latent]
    squashed = np.tanh(out[:, latent:] / LOGVAR_BOUND)
    logvar = LOGVAR_BOUND * squashed
    std = np.exp(0.5 * logvar)
    eps = np.asarray(eps, dtype=np.float64).reshape(mu.shape)
    z = mu + std * eps

    x_hat, dec_cache = model.decoder.forward_cache(z)
    reconstruction = gaussian_nll(x_hat, x, model.recon_sigma)
    kl = kl_divergence(mu, logvar)
    loss = reconstruction + kl
    if not np.isfinite(loss):
        raise NonFiniteError(f"Non-finite VAE loss {loss}")

    decoder_grad, d_z = model.decoder.backward(dec_cache, (x_hat - x) / sigma2 / n)
    d_mu = d_z + mu / n
    d_logvar = d_z * eps * 0.5 * std + 0.5 * (np.exp(logvar) - 1.0) / n
    d_out = np.hstack([d_mu, d_logvar * (1.0 - squashed * squashed)])
    encoder_grad, _ = model.encoder.backward(enc_cache, d_out)
    return VaeLoss(loss, reconstruction, kl, encoder_grad, decoder_grad)


def vae_loss(model: SkillModel, features: np.ndarray, rng: Optional[np.random.Generator] = None,
             eps: Optional[np.ndarray] = None) -> float:
    """Negative ELBO; noise comes from `eps`, else from `rng`, else the posterior mean is decoded."""
    x = np.atleast_2d(features)
    if eps is None:
        shape = (x.shape[0], model.latent_dim)
        eps = rng.standard_normal(shape) if rng is not None else np.zeros(shape)
    return vae_loss_and_grad(model, x, eps).loss


def detector_loss_and_grad(detector: Net, positives: np.ndarray, negatives: np.ndarray
                           ) -> Tuple[float, ParamVector]:
    """Binary cross-entropy on latents: -[sum log p(z+) + sum log(1 - p(z-))] / (n+ + n-)."""
    positives = np.atleast_2d(positives)
    negatives = np.atleast_2d(negatives)
    if positives.shape[0] == 0 or negatives.shape[0] == 0:
        raise ValueError("detector_loss needs non-empty positive and negative batches")
    z = np.vstack([positives, negatives])
    labels = np.concatenate([np.ones(positives.shape[0]), np.zeros(negatives.shape[0])])
    out, cache = detector.forward_cache(z)
    logits = out[:, 0]
    # softplus(-l) = -log sigmoid(l); softplus(l) = -log(1 - sigmoid(l))
    per_example = np.where(labels > 0, np.logaddexp(0.0, -logits), np.logaddexp(0.0, logits))
    n = z.shape[0]
    loss = float(per_example.sum() / n)
    gradient, _ = detector.backward(cache, ((sigmoid(logits) - labels) / n)[:, None])
    return loss, gradient


def detector_loss(model: SkillModel, positive_features: np.ndarray, negative_features: np.ndarray) -> float:
    """Detector loss of feature batches encoded through the (frozen) VAE mean."""
    positives = model.encode_features(np.atleast_2d(positive_features))
    negatives = model.encode_features(np.atleast_2d(negative_features))
    return detector_loss_and_grad(model.detector, positives, negatives)[0]


def td_loss_and_grad(q: Net, latents: np.ndarray, actions: np.ndarray, targets: np.ndarray
                     ) -> Tuple[float, ParamVector]:
    """Mean squared error between Q(z, a) and constant targets; only `q` receives gradient."""
    inputs = np.hstack([np.atleast_2d(latents), np.atleast_2d(actions)])
    if inputs.shape[0] == 0:
        raise ValueError("td_loss needs a non-empty batch")
    out, cache = q.forward_cache(inputs)
    residual = out[:, 0] - np.asarray(targets, dtype=np.float64).reshape(-1)
    n = residual.shape[0]
    gradient, _ = q.backward(cache, (2.0 * residual / n)[:, None])
    return float(np.mean(residual * residual)), gradient


def td_loss(model: SkillModel, batch: TransitionBatch, sampler: Optional[ActionSampler] = None,
            num_samples: int = 200, rng: Optional[np.random.Generator] = None) -> float:
    z = model.encode_features(np.atleast_2d(batch.features))
    z_next = model.encode_features(np.atleast_2d(batch.next_features))
    targets = q_targets(model, z_next, sampler, num_samples, rng)
    return td_loss_and_grad(model.q, z, batch.actions, targets)[0]

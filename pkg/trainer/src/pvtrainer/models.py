"""CNN construction: AlexNet, ResNet-18, SqueezeNet, scratch or fine-tune."""

from __future__ import annotations

import torch
from torch import nn
from torchvision import models as tv_models

from .errors import InvalidArchitecture, PretrainedWeightsUnavailable

IMAGENET_MEAN = (0.485, 0.456, 0.406)
IMAGENET_STD = (0.229, 0.224, 0.225)

_BUILDERS = {
    "alexnet": tv_models.alexnet,
    "resnet18": tv_models.resnet18,
    "squeezenet": tv_models.squeezenet1_0,
}
_WEIGHTS = {
    "alexnet": tv_models.AlexNet_Weights.IMAGENET1K_V1,
    "resnet18": tv_models.ResNet18_Weights.IMAGENET1K_V1,
    "squeezenet": tv_models.SqueezeNet1_0_Weights.IMAGENET1K_V1,
}


def _replace_head(model: nn.Module, arch: str, num_classes: int) -> None:
    if arch == "alexnet":
        model.classifier[6] = nn.Linear(model.classifier[6].in_features, num_classes)
    elif arch == "resnet18":
        model.fc = nn.Linear(model.fc.in_features, num_classes)
    elif arch == "squeezenet":
        model.classifier[1] = nn.Conv2d(512, num_classes, kernel_size=1)
        model.num_classes = num_classes


def build_model(
    arch: str,
    mode: str,
    num_classes: int,
    seed: int = 0,
    unfreeze_all: bool = False,
) -> nn.Module:
    """Build one CNN with a num_classes-wide final classification layer.

    scratch: random init, every layer trainable. finetune: ImageNet
    weights with all layers frozen except the replaced head (unfreeze_all
    lifts the freeze). Raises PretrainedWeightsUnavailable when the
    weights are neither cached nor downloadable.
    """
    if arch not in _BUILDERS:
        raise InvalidArchitecture(f"unknown architecture {arch!r}")
    torch.manual_seed(seed)
    if mode == "scratch":
        return _BUILDERS[arch](weights=None, num_classes=num_classes)
    if mode != "finetune":
        raise ValueError(f"mode must be 'scratch' or 'finetune', got {mode!r}")
    try:
        model = _BUILDERS[arch](weights=_WEIGHTS[arch])
    except Exception as exc:
        raise PretrainedWeightsUnavailable(
            f"could not load ImageNet weights for {arch}: {exc}"
        ) from exc
    if not unfreeze_all:
        for p in model.parameters():
            p.requires_grad = False
    _replace_head(model, arch, num_classes)  # fresh head is trainable
    return model


def build_untrained(arch: str, num_classes: int) -> nn.Module:
    """Architecture shell for loading a saved state dict; no downloads."""
    if arch not in _BUILDERS:
        raise InvalidArchitecture(f"unknown architecture {arch!r}")
    return _BUILDERS[arch](weights=None, num_classes=num_classes)


def normalization_for(mode: str):
    """finetune inherits the pre-trained input statistics; scratch uses
    plain [0, 1] scaling."""
    return (IMAGENET_MEAN, IMAGENET_STD) if mode == "finetune" else None

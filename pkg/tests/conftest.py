import sys
from pathlib import Path

import numpy as np
import pytest

# 测试以 src.* 的形式导入，与 run.py 一致
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from src.core.classifier import Case  # noqa: E402
from src.core.metric import Normalization  # noqa: E402


def _spectrum(rng, case):
    """按情形抽取满足本征值约束的一对本征值"""
    a = rng.uniform(-1.5, 1.5)
    gap = rng.uniform(0.5, 2.0)
    if case is Case.CASE1:
        return a + gap, a - gap
    if case is Case.CASE2:
        return a + 1j * gap, a - 1j * gap
    if case is Case.CASE3:
        return 1j * (a + gap), 1j * (a - gap)
    return 1j * a + gap, 1j * a - gap


def _similarity(rng):
    """条件数有界的相似变换 [[1, a], [b, 1]]，|a|, |b| ≤ 0.5"""
    a, b = 0.5 * rng.uniform(0, 1, 2) * np.exp(2j * np.pi * rng.uniform(0, 1, 2))
    return np.array([[1, a], [b, 1]], dtype=complex)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def random_hamiltonian(rng):
    """
    返回 make(case)：生成给定情形下的随机 2×2 哈密顿量 S⁻¹ diag(E1, E2) S
    """
    def make(case):
        E1, E2 = _spectrum(rng, case)
        S = _similarity(rng)
        return np.linalg.inv(S) @ np.diag([E1, E2]) @ S

    return make


@pytest.fixture
def random_normalization(rng):
    """|Ni| 在 [0.1, 10] 上对数均匀分布，相位随机"""
    def make():
        moduli = 10 ** rng.uniform(-1, 1, 2)
        phases = np.exp(2j * np.pi * rng.uniform(0, 1, 2))
        return Normalization(*(moduli * phases))

    return make

# Copyright 2021 ecodeclub
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http:#www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
词长度度量估计以及上界证明中的见证单词构造。

对数底固定：BS(1,q) 上界用 q 进制位数，下界用自然对数；p < q 时用 q/p 为底。
"""

from __future__ import annotations

import math

from app.domain.errors import InvalidParamsError
from app.domain.group import (
    BSNormalForm,
    GeneratorLetter,
    GroupParams,
    SolvableNormalForm,
    Variant,
    Word,
)
from app.domain.metric import MetricBounds, MetricConstants
from app.service.normal_form import (
    convert_variant,
    solvable_normal_form,
    to_word,
)

_A = GeneratorLetter.A
_A_INV = GeneratorLetter.A_INV
_T = GeneratorLetter.T
_T_INV = GeneratorLetter.T_INV


def _base_digits(value: int, base: int) -> list[int]:
    """value > 0 的 base 进制展开，低位在前"""
    digits: list[int] = []
    while value:
        value, digit = divmod(value, base)
        digits.append(digit)
    return digits


def _log_ratio(value: float, params: GroupParams) -> float:
    return math.log(value) / math.log(params.q / params.p)


def estimate_1q(nf: SolvableNormalForm, q: int) -> MetricBounds:
    """BS(1,q)：f = m + n + ln|N|"""
    if q < 2:
        raise InvalidParamsError(f"estimate_1q 要求 q > 1，实际为 q={q}")
    t_part = nf.m + nf.n
    if nf.N == 0:
        # t^k 本身就是测地线
        return MetricBounds(
            estimate=float(t_part),
            lower=float(t_part),
            upper=float(t_part),
            constants=MetricConstants(c1=1.0, d1=0.0, c2=1.0, d2=0.0),
        )

    f = t_part + math.log(abs(nf.N))
    r = len(_base_digits(abs(nf.N), q)) - 1
    c1 = 1 / (2 * (math.log(q) + 1))
    # r <= ln|N| / ln q，构造性上界不超过 c2·f + d2
    c2 = max(1.0, 2 * q / math.log(q))
    return MetricBounds(
        estimate=f,
        lower=max(0.0, c1 * f),
        upper=float(t_part + 2 * q * (r + 1)),
        constants=MetricConstants(c1=c1, d1=0.0, c2=c2, d2=2.0 * q),
    )


def estimate_pq(nf: BSNormalForm) -> MetricBounds:
    """p < q：f = |w| + log_{q/p}(|N| + 1)"""
    p, q = nf.params.p, nf.params.q
    if p >= q:
        raise InvalidParamsError(
            f"estimate_pq 要求 p < q，{nf.params} 请使用 estimate_pp"
        )
    nf = convert_variant(nf, Variant.STANDARD)
    f = nf.w_length + _log_ratio(abs(nf.tail) + 1, nf.params)
    c = q * p / (q - p)
    constants = MetricConstants(
        c1=1 / (q + 1),
        d1=_log_ratio(2 * c, nf.params),
        c2=float(q + 1),
        d2=float(q),
    )
    return MetricBounds(
        estimate=f,
        lower=max(0.0, constants.c1 * f - constants.d1),
        upper=constants.c2 * f + constants.d2,
        constants=constants,
    )


def estimate_pp(nf: BSNormalForm) -> MetricBounds:
    """p = q：f = |w| + |N|，范式单词本身给出上界"""
    p, q = nf.params.p, nf.params.q
    if p != q:
        raise InvalidParamsError(f"estimate_pp 要求 p = q，实际为 {nf.params}")
    nf = convert_variant(nf, Variant.STANDARD)
    f = float(nf.w_length + abs(nf.tail))
    constants = MetricConstants(c1=1 / (2 * p), d1=0.0, c2=1.0, d2=0.0)
    return MetricBounds(
        estimate=f,
        lower=constants.c1 * f,
        upper=f,
        constants=constants,
    )


def metric_estimate(nf: BSNormalForm) -> MetricBounds:
    """按参数分派：p = q，p = 1 < q，其余 p < q"""
    params = nf.params
    if params.p == params.q:
        return estimate_pp(nf)
    if params.is_solvable:
        solvable = solvable_normal_form(to_word(nf), params.q)
        return estimate_1q(solvable, params.q)
    return estimate_pq(nf)


def base_q_witness(nf: SolvableNormalForm, q: int) -> Word:
    """
    t^{-m} (a^{k_0} t a^{k_1} t ... t a^{k_r} t^{-r}) t^n，其中 N = Σ k_i q^i。

    末尾取 t^{-r}：t 与 t^{-1} 的个数必须相等，单词才等于 t^{-m} a^N t^n。
    """
    if q < 2:
        raise InvalidParamsError(f"base_q_witness 要求 q > 1，实际为 q={q}")
    prefix = (_T_INV,) * nf.m
    suffix = (_T,) * nf.n
    if nf.N == 0:
        return prefix + suffix

    a = _A if nf.N > 0 else _A_INV
    digits = _base_digits(abs(nf.N), q)
    body: list[GeneratorLetter] = []
    for i, digit in enumerate(digits):
        if i:
            body.append(_T)
        body.extend([a] * digit)
    body.extend([_T_INV] * (len(digits) - 1))
    return prefix + tuple(body) + suffix


def horocyclic_witness(exponent: int, params: GroupParams) -> Word:
    """
    a^N = a^{r_1} t a^{r_2} t ... a^{r_k} t a^{d_k p} t^{-k}。

    反复写 N = d_1 q + r_1, d_1 p = d_2 q + r_2, ... 直到 d_k p < q。
    """
    if params.p >= params.q:
        raise InvalidParamsError(
            f"horocyclic_witness 要求 p < q，实际为 {params}"
        )
    a = _A if exponent > 0 else _A_INV
    current = abs(exponent)
    body: list[GeneratorLetter] = []
    k = 0
    while current >= params.q:
        d, r = divmod(current, params.q)
        body.extend([a] * r)
        body.append(_T)
        current = d * params.p
        k += 1
    body.extend([a] * current)
    body.extend([_T_INV] * k)
    return tuple(body)


def horocyclic_upper_length(exponent: int, params: GroupParams) -> float:
    """||a^N|| <= (q+1) log_{q/p}|N| + q"""
    if params.p >= params.q:
        raise InvalidParamsError(
            f"horocyclic_upper_length 要求 p < q，实际为 {params}"
        )
    if exponent == 0:
        return 0.0
    return (params.q + 1) * _log_ratio(abs(exponent), params) + params.q


def in_d_set(nf: BSNormalForm, radius: int) -> bool:
    """元素是否属于 D(n) = {w a^N : |w| + (q+1) log_{q/p} N + q <= n}"""
    nf = convert_variant(nf, Variant.STANDARD)
    return nf.w_length + horocyclic_upper_length(nf.tail, nf.params) <= radius

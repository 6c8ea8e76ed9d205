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
范式的规范字节编码，用作哈希键和持久化格式。

布局：
  - 1 字节变体标记（0 standard，1 balanced）
  - 音节个数（无符号 LEB128）
  - 每个音节一个无符号 LEB128：zigzag(指数) << 1 | (t 符号为负)
  - 尾部：1 字节符号（0 非负，1 负），幅值字节数（LEB128），小端幅值
编码是确定的、单射的。
"""

from __future__ import annotations

from app.domain.errors import CodecError
from app.domain.group import BSNormalForm, GroupParams, Syllable, Variant

_VARIANT_TAGS = {Variant.STANDARD: 0, Variant.BALANCED: 1}
_TAG_VARIANTS = {tag: variant for variant, tag in _VARIANT_TAGS.items()}


def _write_uvarint(buf: bytearray, value: int) -> None:
    while True:
        byte = value & 0x7F
        value >>= 7
        if value:
            buf.append(byte | 0x80)
        else:
            buf.append(byte)
            return


def _read_uvarint(data: bytes, pos: int) -> tuple[int, int]:
    value = shift = 0
    while True:
        if pos >= len(data):
            raise CodecError("LEB128 整数被截断")
        byte = data[pos]
        pos += 1
        value |= (byte & 0x7F) << shift
        if not byte & 0x80:
            return value, pos
        shift += 7


def _zigzag(value: int) -> int:
    return value << 1 if value >= 0 else ((-value) << 1) - 1


def _unzigzag(value: int) -> int:
    return value >> 1 if not value & 1 else -((value + 1) >> 1)


def encode(nf: BSNormalForm) -> bytes:
    buf = bytearray((_VARIANT_TAGS[nf.variant],))
    _write_uvarint(buf, len(nf.syllables))
    for syllable in nf.syllables:
        _write_uvarint(
            buf, _zigzag(syllable.a_exponent) << 1 | (syllable.t_sign < 0)
        )
    magnitude = abs(nf.tail)
    size = (magnitude.bit_length() + 7) // 8
    buf.append(1 if nf.tail < 0 else 0)
    _write_uvarint(buf, size)
    buf.extend(magnitude.to_bytes(size, "little"))
    return bytes(buf)


def decode(data: bytes, params: GroupParams) -> BSNormalForm:
    """encode 的逆运算；数据不是某个合法范式的编码时抛出 CodecError"""
    if not data:
        raise CodecError("空的编码")
    variant = _TAG_VARIANTS.get(data[0])
    if variant is None:
        raise CodecError(f"未知的变体标记: {data[0]}")

    count, pos = _read_uvarint(data, 1)
    syllables: list[Syllable] = []
    for _ in range(count):
        packed, pos = _read_uvarint(data, pos)
        sign = -1 if packed & 1 else 1
        syllables.append(Syllable(_unzigzag(packed >> 1), sign))

    if pos + 1 > len(data):
        raise CodecError("缺少尾部符号字节")
    negative = data[pos]
    if negative not in (0, 1):
        raise CodecError(f"非法的尾部符号字节: {negative}")
    size, pos = _read_uvarint(data, pos + 1)
    if pos + size != len(data):
        raise CodecError("尾部幅值长度与数据不符")
    magnitude = int.from_bytes(data[pos:], "little")
    if size and not data[-1]:
        raise CodecError("尾部幅值不是最短表示")
    if negative and not magnitude:
        raise CodecError("-0 不是规范编码")

    nf = BSNormalForm(
        params=params,
        variant=variant,
        syllables=tuple(syllables),
        tail=-magnitude if negative else magnitude,
    )
    if not nf.is_valid():
        raise CodecError(f"编码对应的音节序列不是 {params} 的合法范式")
    return nf

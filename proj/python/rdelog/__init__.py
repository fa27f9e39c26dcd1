# Copyright 2026 The rdelog Authors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#    http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# =============================================================================
"""Rough paths, signatures and the log-ODE method for rough differential equations."""

from rdelog._core import (
    DomainError,
    NumericError,
    ParseError,
    Tensor,
    VectorField,
    bch,
    bracket,
    euler_increment,
    is_group_like,
    is_lie,
    log_ode_rhs,
    log_signature,
    p_variation,
    signature,
    solve,
)

__all__ = [
    "DomainError",
    "NumericError",
    "ParseError",
    "Tensor",
    "VectorField",
    "bch",
    "bracket",
    "euler_increment",
    "is_group_like",
    "is_lie",
    "log_ode_rhs",
    "log_signature",
    "p_variation",
    "signature",
    "solve",
]

__version__ = "0.1.0"

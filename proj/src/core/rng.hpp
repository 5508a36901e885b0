// SPDX-License-Identifier: Apache-2.0
//
// Copyright 2026 The hwmimo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include "core/common.hpp"

#include <array>
#include <cstdint>

namespace hwmimo {

/// Philox4x32-10 counter-based bijection (Salmon et al., SC'11).
struct Philox4x32
{
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter generate(Counter counter, Key key);
};

/// Purposes keep independent draws of one stream id apart.
enum class StreamPurpose : std::uint32_t
{
    Generic = 0,
    Channel = 1,
    Phase = 2,
    Distortion = 3,
    ReceiverNoise = 4,
    DataSymbols = 5,
    UserDrop = 6,
    Shadowing = 7,
};

/// Random stream addressed by (seed, id, purpose). Draw i of a stream is a
/// pure function of those three values and i, so results do not depend on
/// which worker consumes the stream.
class Stream
{
public:
    Stream(std::uint64_t seed, std::uint64_t id, StreamPurpose purpose = StreamPurpose::Generic);

    std::uint32_t next_u32();
    /// Uniform on the open interval (0, 1) with 53-bit resolution.
    double uniform();
    double normal();
    /// Circularly-symmetric complex Gaussian with E|z|^2 = variance.
    cplx complex_normal(double variance = 1.0);

private:
    void refill();

    Philox4x32::Key key_;
    Philox4x32::Counter counter_;
    Philox4x32::Counter block_{};
    int used_ = 4;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// SplitMix64 finalizer; used to fold several indices into one stream id.
std::uint64_t mix64(std::uint64_t x);
std::uint64_t stream_id(std::uint64_t a, std::uint64_t b);
std::uint64_t stream_id(std::uint64_t a, std::uint64_t b, std::uint64_t c);

} // namespace hwmimo

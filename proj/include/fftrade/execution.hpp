#pragma once

namespace fftrade {

/// Selects the OpenMP kernel or the serial reference path. Both produce
/// identical results; the serial path is kept for tests and benchmarks.
enum class Execution { serial, parallel };

}  // namespace fftrade

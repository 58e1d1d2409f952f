// Copyright (c) 2026 tsbench contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace tsbench {

/// Base class for every error raised by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

#define TSBENCH_ERROR(Name)        \
  struct Name : Error {            \
    using Error::Error;            \
  }

// ingest
TSBENCH_ERROR(MissingColumnError);
TSBENCH_ERROR(UnparseableDateError);
TSBENCH_ERROR(DuplicateDateError);
TSBENCH_ERROR(EmptyAfterCleaningError);
TSBENCH_ERROR(BoundaryOutOfRangeError);
TSBENCH_ERROR(EmptyPartitionError);
TSBENCH_ERROR(SeriesTooShortError);
TSBENCH_ERROR(SingularRegressionError);

// metrics
TSBENCH_ERROR(LengthMismatchError);
TSBENCH_ERROR(ZeroDenominatorError);
TSBENCH_ERROR(ConstantOutputError);

// classical
TSBENCH_ERROR(DimensionMismatchError);
TSBENCH_ERROR(OptimizerDivergedError);
TSBENCH_ERROR(MissingExogError);
TSBENCH_ERROR(AllFitsFailedError);

// neural / probabilistic
TSBENCH_ERROR(ShapeMismatchError);
TSBENCH_ERROR(NonFiniteLossError);
TSBENCH_ERROR(ContextTooShortError);

// bench / io
TSBENCH_ERROR(ConfigError);
TSBENCH_ERROR(IoError);
TSBENCH_ERROR(InvalidArgumentError);

#undef TSBENCH_ERROR

}  // namespace tsbench

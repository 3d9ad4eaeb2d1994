/*
 * Copyright 2026 The PGOT Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef PGOT_ERRORS_HPP_
#define PGOT_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace pgot {

// Every failure surfaced by the protocol libraries derives from Error so
// callers can catch protocol faults separately from std exceptions.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define PGOT_DEFINE_ERROR(NAME)                                \
  class NAME : public Error {                                  \
   public:                                                     \
    explicit NAME(const std::string& what) : Error(what) {}    \
  }

// codec
PGOT_DEFINE_ERROR(ParseError);
PGOT_DEFINE_ERROR(OverflowError);
PGOT_DEFINE_ERROR(SchemaError);
PGOT_DEFINE_ERROR(DecodeError);

// merkle
PGOT_DEFINE_ERROR(EmptyTreeError);
PGOT_DEFINE_ERROR(IndexError);

// secagg crypto
PGOT_DEFINE_ERROR(ThresholdError);
PGOT_DEFINE_ERROR(InsufficientSharesError);
PGOT_DEFINE_ERROR(DuplicateShareError);
PGOT_DEFINE_ERROR(DimensionError);
PGOT_DEFINE_ERROR(EmptyError);

// aggregation
PGOT_DEFINE_ERROR(NumericError);
PGOT_DEFINE_ERROR(BudgetError);
PGOT_DEFINE_ERROR(WeightPolicyError);
PGOT_DEFINE_ERROR(DegenerateFilterError);
PGOT_DEFINE_ERROR(ForgeryError);
PGOT_DEFINE_ERROR(ConsensusError);

// novelty
PGOT_DEFINE_ERROR(ZeroNoveltyError);

// policy
PGOT_DEFINE_ERROR(LockPeriodError);
PGOT_DEFINE_ERROR(RevertError);
PGOT_DEFINE_ERROR(QuorumError);
PGOT_DEFINE_ERROR(GenesisError);
PGOT_DEFINE_ERROR(HaltLimitError);

// economy
PGOT_DEFINE_ERROR(AllocationError);
PGOT_DEFINE_ERROR(InsolvencyError);
PGOT_DEFINE_ERROR(NoFeesError);

// ledger
PGOT_DEFINE_ERROR(AuthError);

// round
PGOT_DEFINE_ERROR(CommitteeError);
PGOT_DEFINE_ERROR(EvaluationError);

// audit
PGOT_DEFINE_ERROR(AvailabilityError);

// cli / scenario
PGOT_DEFINE_ERROR(ConfigError);

#undef PGOT_DEFINE_ERROR

}  // namespace pgot

#endif  // PGOT_ERRORS_HPP_

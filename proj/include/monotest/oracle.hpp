/*!
  \file oracle.hpp
  \brief Query-counted access to a Boolean function.

  Query counts are the resource the testers are measured by; every
  evaluate() bumps the counter.  Each trial owns its oracle; counters
  are not meant to be shared across threads.
*/

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "monotest/hypercube.hpp"
#include "monotest/truth_table.hpp"

namespace monotest {

class QueryOracle {
 public:
  explicit QueryOracle(TruthTable table, bool keep_log = false)
      : n_(table.n()), table_(std::move(table)) {
    if (keep_log) log_.emplace();
  }

  //! Rule-backed oracle; no table is materialized, so any n <= 30 works.
  QueryOracle(int n, std::function<bool(Point)> rule, bool keep_log = false)
      : n_(n), rule_(std::move(rule)) {
    if (n < 1 || n > kMaxDimension) throw std::invalid_argument("QueryOracle: dimension out of range");
    if (keep_log) log_.emplace();
  }

  int n() const { return n_; }

  bool evaluate(Point x) {
    if (x.n != n_) throw std::invalid_argument("QueryOracle::evaluate: dimension mismatch");
    ++count_;
    if (log_) log_->push_back(x);
    return table_ ? table_->get(x.bits) : rule_(x);
  }

  std::uint64_t query_count() const { return count_; }

  const std::vector<Point>* query_log() const { return log_ ? &*log_ : nullptr; }

  void reset_counter() {
    count_ = 0;
    if (log_) log_->clear();
  }

 private:
  int n_ = 0;
  std::optional<TruthTable> table_;
  std::function<bool(Point)> rule_;
  std::uint64_t count_ = 0;
  std::optional<std::vector<Point>> log_;
};

}  // namespace monotest

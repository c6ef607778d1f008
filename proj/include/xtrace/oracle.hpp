#ifndef XTRACE_ORACLE_HPP
#define XTRACE_ORACLE_HPP

#include "xtrace/linop.hpp"
#include "xtrace/sampling.hpp"
#include "xtrace/types.hpp"

namespace xtrace::oracle {

// Direct transcriptions of the leave-one-out estimators, used exclusively
// to test the efficient implementations.  Each one densifies the operator
// (dimension capped at 512), re-orthogonalizes every column deletion
// explicitly, and is a pure function of the densified matrix and the test
// matrix.  Cubic-in-m cost is accepted.

TraceReport xtrace_naive(const LinearOperator& op, const TestMatrix& tm,
                         bool normalize);
TraceReport xnystrace_naive(const LinearOperator& op, const TestMatrix& tm,
                            bool normalize = false);
DiagReport xdiag_naive(const LinearOperator& op, const TestMatrix& tm);

}  // namespace xtrace::oracle

#endif

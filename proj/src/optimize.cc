// Copyright 2026 The nonloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nonloc/optimize.h"

#include <memory>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include "nonloc/error.h"

namespace nonloc {

namespace {

double trampoline(const gsl_vector *v, void *params) {
    const auto &f = *static_cast<const Objective *>(params);
    std::span<const double> x(gsl_vector_const_ptr(v, 0), v->size);
    return f(x);
}

struct VectorDeleter {
    void operator()(gsl_vector *v) const {
        gsl_vector_free(v);
    }
};
struct MinimizerDeleter {
    void operator()(gsl_multimin_fminimizer *m) const {
        gsl_multimin_fminimizer_free(m);
    }
};

}  // namespace

MinimizeResult nelder_mead(
    const Objective &f, std::vector<double> x0, double initial_step, int max_iters, double size_tol) {
    if (x0.empty()) {
        throw InvalidArgument("nelder_mead needs at least one parameter");
    }
    // GSL aborts on internal errors by default; the library reports through
    // return codes instead.
    static const auto previous_handler = gsl_set_error_handler_off();
    (void)previous_handler;

    const std::size_t dim = x0.size();
    std::unique_ptr<gsl_vector, VectorDeleter> start(gsl_vector_alloc(dim));
    std::unique_ptr<gsl_vector, VectorDeleter> steps(gsl_vector_alloc(dim));
    for (std::size_t i = 0; i < dim; i++) {
        gsl_vector_set(start.get(), i, x0[i]);
        gsl_vector_set(steps.get(), i, initial_step);
    }

    gsl_multimin_function fn;
    fn.n = dim;
    fn.f = &trampoline;
    fn.params = const_cast<Objective *>(&f);

    std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter> minimizer(
        gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim));
    gsl_multimin_fminimizer_set(minimizer.get(), &fn, start.get(), steps.get());

    MinimizeResult result;
    for (int it = 0; it < max_iters; it++) {
        result.iterations = it + 1;
        if (gsl_multimin_fminimizer_iterate(minimizer.get()) != GSL_SUCCESS) {
            break;
        }
        double size = gsl_multimin_fminimizer_size(minimizer.get());
        if (gsl_multimin_test_size(size, size_tol) == GSL_SUCCESS) {
            result.converged = true;
            break;
        }
    }
    const gsl_vector *best = gsl_multimin_fminimizer_x(minimizer.get());
    result.x.assign(gsl_vector_const_ptr(best, 0), gsl_vector_const_ptr(best, 0) + dim);
    result.value = gsl_multimin_fminimizer_minimum(minimizer.get());
    return result;
}

}  // namespace nonloc

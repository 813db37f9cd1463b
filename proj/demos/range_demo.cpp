// Forward data of a radial bump, its symmetry residuals and the same data
// after a small out-of-range perturbation.
#include "smt/range.hpp"

#include <cstdio>

int main() {
    using namespace smt;
    const Dimension dim(2);
    const auto f = radial_bump(0.8);
    const DataProfile g = tabulate(forward_profile(f, dim, 0));
    const DataProfile bad = add(g, shifted_bump(0.25, 0.15, 1e-2));

    std::printf("%8s %14s %14s\n", "t", "g(t)", "perturbed");
    for (double t = 0.1; t < 2.0; t += 0.2) std::printf("%8.3f %14.6e %14.6e\n", t, g(t), bad(t));

    std::printf("\n%8s %14s %14s\n", "s", "residual", "perturbed");
    for (double s : chebyshev_grid(8))
        std::printf("%8.4f %14.3e %14.3e\n", s, radial_range_residual(to_h(g, dim), dim, s),
                    radial_range_residual(to_h(bad, dim), dim, s));

    std::printf("\n%4s %12s %14s %14s\n", "k", "lambda_k", "|g^(lambda_k)|", "perturbed");
    const auto zeros = bessel_zeros(dim.alpha(), 5);
    for (int k = 1; k <= 5; ++k)
        std::printf("%4d %12.6f %14.3e %14.3e\n", k, zeros[k - 1], vanishing_condition_residual(g, dim, 0, k),
                    vanishing_condition_residual(bad, dim, 0, k));
}

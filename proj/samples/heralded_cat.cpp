// Herald a spin cat on mode B by measuring S_x on mode A, then watch its
// Wigner negativity fade as read-out noise grows.

#include <cstdio>

#include "sqz/sqz.hpp"

int main() {
    using namespace sqz;
    const OATParameters p{100, 0.1};
    const SplitState split = split_state(p);
    const int n_a = 50;

    for (int l_a : {48, 49}) {
        const ConditionalOutcome o = condition(split, n_a, l_a, axes::plus_x());
        std::printf("l_A=%d  p(l_A|N_A)=%.4f  F_Q/N_B=%.3f\n", l_a, o.prob_given_na,
                    qfi_pure(*o.state_b).fq / (p.n - n_a));
        for (double sigma : {0.0, 0.3, 0.5, 0.7, 0.9}) {
            const SpinDensity rho = noisy_conditional_state(split, n_a, l_a, axes::plus_x(), {sigma});
            std::printf("  sigma=%.1f  WN=%.5f\n", sigma, wigner_negativity(rho));
        }
    }
}

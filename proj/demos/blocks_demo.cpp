// Minimal tour: build a cyclotomic quotient, inspect its blocks, and realize
// the KLR generators inside one of them.

#include <iostream>

#include "heckelab/klr.hpp"

using namespace heckelab;

int main() {
    auto field = FieldSpec::nondegenerate_cyclotomic(3);
    Weight lambda({0, 1}, field.quantum_char());
    auto rep = get_regular_rep(field, 2, lambda);
    std::cout << "H_2^(L0+L1) over Q(zeta_3): dim " << rep->dim() << "\n";
    for (const auto& block : compute_blocks(*rep)) {
        std::cout << "block " << block_str(block.beta) << ", dim " << block.dimension
                  << ", sequences";
        for (const auto& s : block.sequences) std::cout << " " << residue_str(s);
        std::cout << "\n";
        KLRImageSet images(rep, block.beta);
        std::size_t failed = 0;
        auto lines = images.verify_relations();
        for (const auto& l : lines) failed += !l.passed;
        std::cout << "  quiver Hecke relations: " << (lines.size() - failed) << "/"
                  << lines.size() << " hold\n";
    }
    return 0;
}

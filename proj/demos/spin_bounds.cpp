// Recompute the tight spin bounds and print them next to their reference
// values.

#include <cstdio>

#include "qbound/catalog.hpp"

int main() {
    using namespace qbound;

    OptimizerConfig config;
    for (const char* group : {"spin1", "spinj.H", "spinj.var"}) {
        for (const CatalogRow& row : run_catalog(config, group)) {
            std::printf("%-18s computed %.9f  reference %-14s  deviation %.2e  %s\n",
                        row.result.name.c_str(), row.result.value,
                        row.result.paper_expression.c_str(), row.result.deviation,
                        row.pass ? "ok" : "FAIL");
        }
    }
    return 0;
}

#include <gtest/gtest.h>

#include <atomic>
#include <stdexcept>
#include <vector>

#include "excitonsim/parallel.hpp"

using excitonsim::parallel_for;

TEST(ParallelFor, VisitsEveryIndexOnce) {
    for (std::size_t workers : {1u, 3u, 16u}) {
        std::vector<std::atomic<int>> hits(257);
        parallel_for(hits.size(), workers, [&](std::size_t i) { hits[i]++; });
        for (const auto& h : hits) {
            EXPECT_EQ(h.load(), 1);
        }
    }
}

TEST(ParallelFor, RethrowsWorkerException) {
    EXPECT_THROW(parallel_for(100, 4,
                              [](std::size_t i) {
                                  if (i == 37) throw std::runtime_error("boom");
                              }),
                 std::runtime_error);
}

TEST(ParallelFor, EmptyRangeIsNoOp) {
    bool called = false;
    parallel_for(0, 4, [&](std::size_t) { called = true; });
    EXPECT_FALSE(called);
}

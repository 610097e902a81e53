#pragma once

#include <atomic>
#include <cstdint>

namespace zecale::curves
{

/// Counts pairing evaluations (one per (G1, G2) argument pair handed to a
/// pairing or pairing-product call). One counter exists per curve engine.
class PairingCounter
{
public:
    void add(uint64_t n) { count_.fetch_add(n, std::memory_order_relaxed); }
    uint64_t value() const { return count_.load(std::memory_order_relaxed); }
    void reset() { count_.store(0, std::memory_order_relaxed); }

private:
    std::atomic<uint64_t> count_{0};
};

} // namespace zecale::curves

#pragma once

#include <optional>
#include <string>

#include "cdm/constants.hpp"
#include "cdm/divisor.hpp"
#include "cdm/relations.hpp"

namespace cdm {

// Binary cache layout (all integers little-endian fixed-width):
//   0  magic "CDM1"
//   4  version        u16   (current: 1)
//   6  payload_kind   u8    (1 divisor-table, 2 kernel-index, 3 weight-table)
//   7  reserved       u8
//   8  l1,m1,l2,m2    u32*4 (zeroed for kernel-index)
//  24  limit          u64
//  32  checksum       u64   (FNV-1a 64 over the payload bytes)
//  40  payload
// Loads refuse on magic/version/kind/spec/limit mismatch or bad checksum.

enum class PayloadKind : unsigned char {
    divisor_table = 1,
    kernel_index = 2,
    weight_table = 3,
};

u64 fnv1a64(const void* data, std::size_t len);

bool save_divisor_table(const std::string& path, const DivisorTable& table);
std::optional<DivisorTable> load_divisor_table(const std::string& path,
                                               const CongruenceSpec& spec,
                                               u64 limit,
                                               std::string* why = nullptr);

bool save_kernel_index(const std::string& path, const KernelIndex& index);
std::optional<KernelIndex> load_kernel_index(const std::string& path, u64 y,
                                             std::string* why = nullptr);

bool save_weight_table(const std::string& path, const TwistedWeightTable& table);
std::optional<TwistedWeightTable> load_weight_table(const std::string& path,
                                                    const CongruenceSpec& spec,
                                                    u64 y,
                                                    std::string* why = nullptr);

// <cache_dir>/<kind>_<l1>_<m1>_<l2>_<m2>_<limit>.cdm
std::string cache_file_name(PayloadKind kind, const CongruenceSpec& spec, u64 limit);

}  // namespace cdm

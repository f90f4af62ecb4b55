#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "heavyhex/gauge.hpp"
#include "heavyhex/noise.hpp"

namespace heavyhex {

enum class CanonicalMethod { search, rank, exact, none };

std::string to_string(CanonicalMethod method);
CanonicalMethod canonical_method_from_string(const std::string& name);

/// First line of every dataset file.  The stream for record i is derived
/// from (seed, i), so identical headers produce byte-identical files no
/// matter how generation is partitioned.
struct DatasetHeader {
    int format_version = 1;
    int d = 0;
    NoiseConfig noise;
    std::uint64_t n = 0;
    std::uint64_t seed = 0;
    CanonicalMethod canonical = CanonicalMethod::exact;
};

/// One sampled error.  Bit strings use one '0'/'1' character per bit with
/// index 0 leftmost.  canon_x / canon_z hold the gauge-class representatives
/// of error_x / error_z (copies of the raw fields when canonical = none).
struct DatasetRecord {
    BitVec syndrome_z;
    BitVec syndrome_x;
    BitVec error_x;
    BitVec error_z;
    BitVec canon_x;
    BitVec canon_z;
};

struct Dataset {
    DatasetHeader header;
    std::vector<DatasetRecord> records;
};

/// Generate and stream one JSONL dataset: header line, then n record lines.
void write_dataset(std::ostream& out, const CodeLayout& layout, const DatasetHeader& header);

void generate_dataset_file(const std::string& path, const CodeLayout& layout,
                           const DatasetHeader& header);

Dataset generate_dataset(const CodeLayout& layout, const DatasetHeader& header);

/// Write an already materialized dataset (header.n must match the record
/// count).
void save_dataset(const std::string& path, const Dataset& ds);

/// Parse a dataset file.  With verify set, syndromes (for noiseless-syndrome
/// files) and canonical fields are recomputed and the first mismatch is
/// reported with its line number.
Dataset load_dataset(const std::string& path, bool verify = false);

}  // namespace heavyhex

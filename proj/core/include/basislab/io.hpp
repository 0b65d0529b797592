#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "basislab/sequence.hpp"
#include "basislab/sumset.hpp"

namespace basislab {

// Shortest round-trip decimal form; used everywhere a double reaches a file
// so that reruns are byte-identical.
std::string fmt_double(double v);

// RFC-4180-style field quoting (quotes doubled, field quoted when it holds
// a comma, quote or newline).
std::string csv_escape(const std::string& field);

// Writes via a temp file in the same directory plus rename, so readers never
// observe a half-written file and failed runs leave no partial output.
void atomic_write_file(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

// FNV-1a 64 over the raw bytes, as a 16-digit hex string.
std::string fnv1a64_hex(const std::string& bytes);

// `n,a_n,flag` rows.
std::string sequence_csv(const SequenceWindow& seq);

// 16-byte header (magic "SBM1", u32 s, u64 limit), then the bits
// little-endian, bit m at byte m/8 bit m%8.
std::string bitmap_dump(const SumsetBitmap& bm);
SumsetBitmap bitmap_load(const std::string& bytes);

std::string gap_report_json(const GapReport& rep);

} // namespace basislab

#include "basislab/io.hpp"

#include <bit>
#include <charconv>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "basislab/errors.hpp"

namespace basislab {

std::string fmt_double(double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, p);
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

void atomic_write_file(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) raise(ErrorKind::Config, "cannot open for writing: " + tmp);
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!f) raise(ErrorKind::Config, "write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        raise(ErrorKind::Config, "rename failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) raise(ErrorKind::Config, "cannot open: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::string fnv1a64_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string sequence_csv(const SequenceWindow& seq) {
    std::string out = "n,a_n,flag\n";
    for (std::size_t i = 0; i < seq.values.size(); ++i) {
        out += std::to_string(seq.n_at(i));
        out += ',';
        out += std::to_string(seq.values[i]);
        out += ',';
        out += seq.precision_flags[i] ? '1' : '0';
        out += '\n';
    }
    return out;
}

namespace {
constexpr char kBitmapMagic[4] = {'S', 'B', 'M', '1'};

template <class T>
void append_le(std::string& out, T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i)
        out += static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xFF);
}

template <class T>
T read_le(const std::string& s, std::size_t at) {
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i)
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(s[at + i])) << (8 * i);
    return static_cast<T>(v);
}
} // namespace

std::string bitmap_dump(const SumsetBitmap& bm) {
    std::string out;
    out.append(kBitmapMagic, 4);
    append_le<std::uint32_t>(out, static_cast<std::uint32_t>(bm.s));
    append_le<std::uint64_t>(out, static_cast<std::uint64_t>(bm.limit));
    const std::size_t nbytes = (static_cast<std::size_t>(bm.limit) + 8) / 8;
    out.reserve(out.size() + nbytes);
    for (std::size_t b = 0; b < nbytes; ++b) {
        unsigned char byte = 0;
        for (int bit = 0; bit < 8; ++bit) {
            std::size_t m = b * 8 + static_cast<std::size_t>(bit);
            if (m <= static_cast<std::size_t>(bm.limit) && bm.bits.test(m)) byte |= 1U << bit;
        }
        out += static_cast<char>(byte);
    }
    return out;
}

SumsetBitmap bitmap_load(const std::string& bytes) {
    if (bytes.size() < 16 || std::memcmp(bytes.data(), kBitmapMagic, 4) != 0)
        raise(ErrorKind::Config, "bitmap_load: bad header");
    SumsetBitmap bm;
    bm.s = static_cast<int>(read_le<std::uint32_t>(bytes, 4));
    bm.limit = static_cast<std::int64_t>(read_le<std::uint64_t>(bytes, 8));
    bm.bits = Bitset(static_cast<std::size_t>(bm.limit) + 1);
    const std::size_t nbytes = (static_cast<std::size_t>(bm.limit) + 8) / 8;
    if (bytes.size() != 16 + nbytes) raise(ErrorKind::Config, "bitmap_load: truncated payload");
    for (std::size_t b = 0; b < nbytes; ++b) {
        auto byte = static_cast<unsigned char>(bytes[16 + b]);
        while (byte) {
            int bit = std::countr_zero(static_cast<unsigned>(byte));
            std::size_t m = b * 8 + static_cast<std::size_t>(bit);
            if (m <= static_cast<std::size_t>(bm.limit)) bm.bits.set(m);
            byte = static_cast<unsigned char>(byte & (byte - 1));
        }
    }
    return bm;
}

std::string gap_report_json(const GapReport& rep) {
    std::string out = "{\"window\": [" + std::to_string(rep.lo) + ", " + std::to_string(rep.hi) +
                      "], \"max_gap\": " + std::to_string(rep.max_gap) +
                      ", \"location\": " + std::to_string(rep.max_gap_location) +
                      ", \"histogram\": [";
    for (std::size_t i = 0; i < rep.gap_histogram.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(rep.gap_histogram[i]);
    }
    out += "]}";
    return out;
}

} // namespace basislab

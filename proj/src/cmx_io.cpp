#include "helion/cmx_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace helion {

namespace {

constexpr char kMagic[8] = {'C', 'M', 'X', 'v', '0', '0', '0', '1'};

void put_u64_le(std::string& out, std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64_le(std::string& out, double v) {
    put_u64_le(out, std::bit_cast<std::uint64_t>(v));
}

std::uint64_t get_u64_le(const std::string& in, std::size_t offset) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) {
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[offset + i])) << (8 * i);
    }
    return v;
}

double get_f64_le(const std::string& in, std::size_t offset) {
    return std::bit_cast<double>(get_u64_le(in, offset));
}

}  // namespace

void write_bytes_atomic(const std::filesystem::path& path, const std::string& bytes) {
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open for writing: " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        out.flush();
        if (!out) throw IoError("write failed: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("rename failed: " + tmp.string() + " -> " + path.string());
}

std::string read_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open for reading: " + path.string());
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (in.bad()) throw IoError("read failed: " + path.string());
    return bytes;
}

void write_cmx(const std::filesystem::path& path, const ComplexMatrix& m) {
    std::string buf;
    buf.reserve(24 + m.rows() * m.cols() * 16);
    buf.append(kMagic, sizeof(kMagic));
    put_u64_le(buf, m.rows());
    put_u64_le(buf, m.cols());
    for (const Complex& z : m.data()) {
        put_f64_le(buf, z.real());
        put_f64_le(buf, z.imag());
    }
    write_bytes_atomic(path, buf);
}

ComplexMatrix read_cmx(const std::filesystem::path& path) {
    const std::string buf = read_bytes(path);
    if (buf.size() < 24 || std::memcmp(buf.data(), kMagic, sizeof(kMagic)) != 0) {
        throw IoError("not a CMX1 file: " + path.string());
    }
    const std::uint64_t rows = get_u64_le(buf, 8);
    const std::uint64_t cols = get_u64_le(buf, 16);
    if (rows == 0 || cols == 0 || rows > (1u << 20) || cols > (1u << 20)) {
        throw IoError("CMX1 header has implausible shape: " + path.string());
    }
    const std::uint64_t n = rows * cols;
    if (buf.size() != 24 + n * 16) {
        throw IoError("CMX1 payload size mismatch: " + path.string());
    }
    ComplexMatrix m(rows, cols);
    auto entries = m.data();
    for (std::uint64_t i = 0; i < n; ++i) {
        entries[i] = Complex(get_f64_le(buf, 24 + i * 16), get_f64_le(buf, 24 + i * 16 + 8));
    }
    if (!m.is_finite()) throw IoError("CMX1 payload contains non-finite values: " + path.string());
    return m;
}

}  // namespace helion

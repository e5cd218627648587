#include "monoalign/tensor_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

namespace monoalign::io {

namespace {

constexpr std::array<char, 8> kMagic = {'M', 'A', 'S', 'T', 'E', 'N', 'S', '\0'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint8_t kDtypeF32 = 0;
constexpr std::uint8_t kDtypeU8 = 1;

static_assert(std::endian::native == std::endian::little,
              "payload fast paths assume a little-endian host");

void append_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int k = 0; k < 4; ++k) {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
  }
}

void append_u64(std::vector<std::uint8_t>& out, std::uint64_t v) {
  for (int k = 0; k < 8; ++k) {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * k)));
  }
}

std::uint32_t load_u32(const std::uint8_t* p) {
  std::uint32_t v = 0;
  for (int k = 0; k < 4; ++k) {
    v |= static_cast<std::uint32_t>(p[k]) << (8 * k);
  }
  return v;
}

std::uint64_t load_u64(const std::uint8_t* p) {
  std::uint64_t v = 0;
  for (int k = 0; k < 8; ++k) {
    v |= static_cast<std::uint64_t>(p[k]) << (8 * k);
  }
  return v;
}

std::vector<std::uint8_t> encode_header(std::uint8_t dtype,
                                        const std::array<std::uint64_t, 3>& dims,
                                        bool lengths_present) {
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize);
  out.insert(out.end(), kMagic.begin(), kMagic.end());
  append_u32(out, kVersion);
  out.push_back(dtype);
  out.push_back(3);  // ndims
  for (std::uint64_t d : dims) {
    append_u64(out, d);
  }
  out.push_back(lengths_present ? 1 : 0);
  return out;
}

std::vector<std::uint8_t> encode_lengths(const std::vector<ValidLengths>& lengths) {
  std::vector<std::uint8_t> out;
  out.reserve(lengths.size() * 8);
  for (const ValidLengths& l : lengths) {
    append_u32(out, l.text);
    append_u32(out, l.speech);
  }
  return out;
}

void write_file(const std::filesystem::path& path,
                const std::vector<std::uint8_t>& header,
                const void* payload, std::size_t payload_bytes,
                const std::vector<std::uint8_t>& trailer) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError(Errc::IoFailure, "cannot open for writing: " + path.string());
  }
  out.write(reinterpret_cast<const char*>(header.data()),
            static_cast<std::streamsize>(header.size()));
  out.write(static_cast<const char*>(payload),
            static_cast<std::streamsize>(payload_bytes));
  out.write(reinterpret_cast<const char*>(trailer.data()),
            static_cast<std::streamsize>(trailer.size()));
  out.flush();
  if (!out) {
    throw IoError(Errc::IoFailure, "write failed: " + path.string());
  }
}

struct HeaderFields {
  std::uint8_t dtype = 0;
  std::array<std::uint64_t, 3> dims = {};
  bool lengths_present = false;
};

HeaderFields decode_header(const std::uint8_t* buf, const std::filesystem::path& path) {
  if (std::memcmp(buf, kMagic.data(), kMagic.size()) != 0) {
    throw IoError(Errc::BadMagic, "not a tensor file: " + path.string());
  }
  const std::uint32_t version = load_u32(buf + 8);
  if (version != kVersion) {
    std::ostringstream msg;
    msg << path.string() << ": unsupported format version " << version;
    throw IoError(Errc::UnsupportedVersion, msg.str());
  }
  HeaderFields h;
  h.dtype = buf[12];
  if (h.dtype != kDtypeF32 && h.dtype != kDtypeU8) {
    std::ostringstream msg;
    msg << path.string() << ": unsupported dtype code " << int{h.dtype};
    throw IoError(Errc::UnsupportedVersion, msg.str());
  }
  if (buf[13] != 3) {
    std::ostringstream msg;
    msg << path.string() << ": unsupported rank " << int{buf[13]};
    throw IoError(Errc::UnsupportedVersion, msg.str());
  }
  for (int d = 0; d < 3; ++d) {
    h.dims[static_cast<std::size_t>(d)] = load_u64(buf + 14 + 8 * d);
  }
  const std::uint8_t flag = buf[38];
  if (flag > 1) {
    std::ostringstream msg;
    msg << path.string() << ": unsupported lengths flag " << int{flag};
    throw IoError(Errc::UnsupportedVersion, msg.str());
  }
  h.lengths_present = flag == 1;
  return h;
}

/// Element count of the payload, rejecting anything a reader should not
/// allocate: zero dims, dims past int range, byte sizes past the budget.
std::size_t checked_count(const HeaderFields& h, std::size_t dtype_size,
                          std::size_t byte_budget,
                          const std::filesystem::path& path) {
  for (std::uint64_t d : h.dims) {
    if (d == 0) {
      throw IoError(Errc::DimensionOverflow,
                    path.string() + ": header declares a zero dimension");
    }
    if (d > static_cast<std::uint64_t>(std::numeric_limits<int>::max())) {
      std::ostringstream msg;
      msg << path.string() << ": dimension " << d << " out of range";
      throw IoError(Errc::DimensionOverflow, msg.str());
    }
  }
  const std::uint64_t budget_elems = byte_budget / dtype_size;
  std::uint64_t count = 1;
  for (std::uint64_t d : h.dims) {
    if (count > budget_elems / d) {
      std::ostringstream msg;
      msg << path.string() << ": payload of " << h.dims[0] << "x" << h.dims[1]
          << "x" << h.dims[2] << " elements exceeds the " << byte_budget
          << "-byte budget";
      throw IoError(Errc::DimensionOverflow, msg.str());
    }
    count *= d;
  }
  return static_cast<std::size_t>(count);
}

void read_exact(std::ifstream& in, void* dst, std::size_t bytes,
                const std::filesystem::path& path, const char* what) {
  in.read(static_cast<char*>(dst), static_cast<std::streamsize>(bytes));
  if (static_cast<std::size_t>(in.gcount()) != bytes) {
    std::ostringstream msg;
    msg << path.string() << ": truncated " << what << " (expected " << bytes
        << " bytes, got " << in.gcount() << ")";
    throw IoError(Errc::TruncatedFile, msg.str());
  }
}

std::vector<ValidLengths> read_lengths(std::ifstream& in, int batch,
                                       const std::filesystem::path& path) {
  std::vector<std::uint8_t> raw(static_cast<std::size_t>(batch) * 8);
  read_exact(in, raw.data(), raw.size(), path, "lengths table");
  std::vector<ValidLengths> lengths(static_cast<std::size_t>(batch));
  for (int b = 0; b < batch; ++b) {
    lengths[static_cast<std::size_t>(b)].text = load_u32(raw.data() + 8 * b);
    lengths[static_cast<std::size_t>(b)].speech = load_u32(raw.data() + 8 * b + 4);
  }
  return lengths;
}

}  // namespace

void write_tensor(const std::filesystem::path& path, const LikelihoodBatch& batch) {
  const auto header = encode_header(
      kDtypeF32,
      {static_cast<std::uint64_t>(batch.batch), static_cast<std::uint64_t>(batch.text_cap),
       static_cast<std::uint64_t>(batch.speech_cap)},
      true);
  write_file(path, header, batch.values.data(), batch.values.size() * sizeof(float),
             encode_lengths(batch.lengths));
}

void write_tensor(const std::filesystem::path& path, const AlignmentMatrix& m) {
  const auto header = encode_header(
      kDtypeU8,
      {static_cast<std::uint64_t>(m.batch), static_cast<std::uint64_t>(m.text_cap),
       static_cast<std::uint64_t>(m.speech_cap)},
      true);
  write_file(path, header, m.values.data(), m.values.size(), encode_lengths(m.lengths));
}

Tensor read_tensor(const std::filesystem::path& path, std::size_t byte_budget) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError(Errc::IoFailure, "cannot open: " + path.string());
  }
  std::array<std::uint8_t, kHeaderSize> buf = {};
  read_exact(in, buf.data(), buf.size(), path, "header");
  const HeaderFields h = decode_header(buf.data(), path);

  const std::size_t dtype_size = h.dtype == kDtypeF32 ? sizeof(float) : 1;
  const std::size_t count = checked_count(h, dtype_size, byte_budget, path);
  const int b = static_cast<int>(h.dims[0]);
  const int t = static_cast<int>(h.dims[1]);
  const int s = static_cast<int>(h.dims[2]);

  if (h.dtype == kDtypeF32) {
    LikelihoodBatch batch(b, t, s);
    read_exact(in, batch.values.data(), count * dtype_size, path, "payload");
    if (h.lengths_present) {
      batch.lengths = read_lengths(in, b, path);
    }
    return batch;
  }
  AlignmentMatrix m(b, t, s);
  read_exact(in, m.values.data(), count * dtype_size, path, "payload");
  if (h.lengths_present) {
    m.lengths = read_lengths(in, b, path);
  }
  return m;
}

}  // namespace monoalign::io

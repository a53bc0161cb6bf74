#include "optkb/archive.hpp"

#include <zlib.h>

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <random>
#include <stdexcept>

namespace optkb::archive {

namespace fs = std::filesystem;

namespace {

std::uint32_t le32(std::string_view d, std::size_t at) {
  if (at + 4 > d.size()) throw std::runtime_error("truncated zip archive");
  return static_cast<std::uint32_t>(static_cast<unsigned char>(d[at])) |
         static_cast<std::uint32_t>(static_cast<unsigned char>(d[at + 1])) << 8 |
         static_cast<std::uint32_t>(static_cast<unsigned char>(d[at + 2])) << 16 |
         static_cast<std::uint32_t>(static_cast<unsigned char>(d[at + 3])) << 24;
}

std::uint16_t le16(std::string_view d, std::size_t at) {
  if (at + 2 > d.size()) throw std::runtime_error("truncated zip archive");
  return static_cast<std::uint16_t>(
      static_cast<unsigned char>(d[at]) |
      static_cast<unsigned char>(d[at + 1]) << 8);
}

std::string inflate_stream(std::string_view data, int window_bits,
                           std::size_t expected = 0) {
  z_stream zs{};
  if (inflateInit2(&zs, window_bits) != Z_OK) {
    throw std::runtime_error("zlib initialisation failed");
  }
  std::string out;
  out.reserve(expected ? expected : data.size() * 4);
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
  zs.avail_in = static_cast<uInt>(data.size());
  char buffer[1 << 15];
  int rc = Z_OK;
  while (rc != Z_STREAM_END) {
    zs.next_out = reinterpret_cast<Bytef*>(buffer);
    zs.avail_out = sizeof buffer;
    rc = inflate(&zs, Z_NO_FLUSH);
    if (rc != Z_OK && rc != Z_STREAM_END) {
      inflateEnd(&zs);
      throw std::runtime_error("corrupt compressed data");
    }
    out.append(buffer, sizeof buffer - zs.avail_out);
    if (rc == Z_OK && zs.avail_in == 0 && zs.avail_out != 0) {
      inflateEnd(&zs);
      throw std::runtime_error("truncated compressed data");
    }
  }
  inflateEnd(&zs);
  return out;
}

fs::path safe_path(const std::string& name) {
  fs::path rel = fs::path(name).lexically_normal();
  if (rel.empty() || rel.is_absolute() || rel.has_root_name()) {
    throw std::runtime_error("archive entry with absolute path: " + name);
  }
  for (const auto& part : rel) {
    if (part == "..") throw std::runtime_error("archive entry escapes target: " + name);
  }
  return rel;
}

void write_file(const fs::path& dest, const fs::path& rel, std::string_view body) {
  const fs::path target = dest / rel;
  fs::create_directories(target.parent_path());
  std::ofstream out(target, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + target.string());
  out.write(body.data(), static_cast<std::streamsize>(body.size()));
}

std::uint64_t octal(std::string_view field) {
  std::uint64_t v = 0;
  for (char c : field) {
    if (c == '\0' || c == ' ') {
      if (v) break;
      continue;
    }
    if (c < '0' || c > '7') throw std::runtime_error("bad tar header number");
    v = v * 8 + static_cast<std::uint64_t>(c - '0');
  }
  return v;
}

std::string cstr(std::string_view field) {
  return std::string(field.substr(0, field.find('\0')));
}

std::vector<std::string> extract_tar(std::string_view d, const fs::path& dest) {
  std::vector<std::string> files;
  std::size_t at = 0;
  std::string long_name;
  while (at + 512 <= d.size()) {
    const std::string_view header = d.substr(at, 512);
    if (header.find_first_not_of('\0') == std::string_view::npos) break;
    std::string name = cstr(header.substr(0, 100));
    const std::string prefix = cstr(header.substr(345, 155));
    if (!prefix.empty() && header.substr(257, 5) == "ustar") name = prefix + "/" + name;
    const std::uint64_t size = octal(header.substr(124, 12));
    const char type = header[156];
    at += 512;
    if (at + size > d.size()) throw std::runtime_error("truncated tar archive");
    const std::string_view body = d.substr(at, size);
    at += (size + 511) / 512 * 512;

    if (type == 'L') {
      long_name = cstr(body);
      continue;
    }
    if (!long_name.empty()) {
      name = long_name;
      long_name.clear();
    }
    if (type == '0' || type == '\0' || type == '7') {
      const fs::path rel = safe_path(name);
      write_file(dest, rel, body);
      files.push_back(rel.generic_string());
    }
  }
  return files;
}

std::vector<std::string> extract_zip(std::string_view d, const fs::path& dest) {
  std::vector<std::string> files;
  // Central directory end record: scan backwards over a possible comment.
  std::size_t eocd = std::string_view::npos;
  for (std::size_t i = d.size() >= 22 ? d.size() - 22 : 0;; --i) {
    if (le32(d, i) == 0x06054b50) {
      eocd = i;
      break;
    }
    if (i == 0 || d.size() - i > 22 + 0xFFFF) break;
  }
  if (eocd == std::string_view::npos) throw std::runtime_error("zip end record not found");
  const std::uint16_t entries = le16(d, eocd + 10);
  std::size_t at = le32(d, eocd + 16);
  for (std::uint16_t n = 0; n < entries; ++n) {
    if (le32(d, at) != 0x02014b50) throw std::runtime_error("bad zip directory entry");
    const std::uint16_t method = le16(d, at + 10);
    const std::uint32_t csize = le32(d, at + 20);
    const std::uint32_t usize = le32(d, at + 24);
    const std::uint16_t name_len = le16(d, at + 28);
    const std::uint16_t extra_len = le16(d, at + 30);
    const std::uint16_t comment_len = le16(d, at + 32);
    const std::uint32_t local = le32(d, at + 42);
    if (at + 46 + name_len > d.size()) throw std::runtime_error("truncated zip archive");
    const std::string name(d.substr(at + 46, name_len));
    at += 46 + name_len + extra_len + comment_len;
    if (name.empty() || name.back() == '/') continue;

    if (le32(d, local) != 0x04034b50) throw std::runtime_error("bad zip local header");
    const std::size_t data_at = local + 30 + le16(d, local + 26) + le16(d, local + 28);
    if (data_at + csize > d.size()) throw std::runtime_error("truncated zip archive");
    const std::string_view raw = d.substr(data_at, csize);
    std::string body;
    if (method == 0) {
      body = std::string(raw);
    } else if (method == 8) {
      body = inflate_stream(raw, -MAX_WBITS, usize);
    } else {
      throw std::runtime_error("unsupported zip compression method " +
                               std::to_string(method) + " for " + name);
    }
    const fs::path rel = safe_path(name);
    write_file(dest, rel, body);
    files.push_back(rel.generic_string());
  }
  return files;
}

}  // namespace

Format detect(std::string_view data) {
  if (data.size() >= 2 && static_cast<unsigned char>(data[0]) == 0x1f &&
      static_cast<unsigned char>(data[1]) == 0x8b) {
    return Format::TarGz;
  }
  if (data.size() >= 4 && data.substr(0, 4) == std::string_view("PK\x03\x04", 4)) {
    return Format::Zip;
  }
  if (data.size() >= 512 && data.substr(257, 5) == "ustar") return Format::Tar;
  return Format::Unknown;
}

std::string gunzip(std::string_view data) {
  return inflate_stream(data, 16 + MAX_WBITS);
}

std::vector<std::string> extract(std::string_view data, const fs::path& dest) {
  switch (detect(data)) {
    case Format::Tar:
      return extract_tar(data, dest);
    case Format::TarGz: {
      const std::string tar = gunzip(data);
      return extract_tar(tar, dest);
    }
    case Format::Zip:
      return extract_zip(data, dest);
    case Format::Unknown:
      break;
  }
  throw std::runtime_error("unrecognised archive format (expected tar, tar.gz or zip)");
}

TempDir::TempDir() {
  std::random_device rd;
  std::mt19937_64 rng(rd());
  const fs::path base = fs::temp_directory_path();
  for (int attempt = 0; attempt < 100; ++attempt) {
    fs::path candidate = base / ("optkb-" + std::to_string(rng()));
    std::error_code ec;
    if (fs::create_directory(candidate, ec)) {
      path_ = candidate;
      return;
    }
  }
  throw std::runtime_error("cannot create temporary directory");
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

}  // namespace optkb::archive

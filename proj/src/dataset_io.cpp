#include "oms/dataset_io.h"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>

namespace oms {

namespace {

std::vector<std::uint8_t> read_bytes(const fs::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const fs::path & path, std::span<const std::uint8_t> bytes)
{
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open " + path.string() + " for writing");
  }
  out.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw IoError("write failed for " + path.string());
  }
}

template <class T>
T load_le(const std::uint8_t * p)
{
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
  }
  return static_cast<T>(v);
}

template <class T>
void store_le(std::vector<std::uint8_t> & out, T value)
{
  const auto v = static_cast<std::uint64_t>(value);
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
}

std::vector<std::string> split_lines(const std::string & text)
{
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    lines.push_back(line);
  }
  return lines;
}

bool parse_int(const std::string & s, long long & out)
{
  if (s.empty()) {
    return false;
  }
  char * end = nullptr;
  errno = 0;
  out = std::strtoll(s.c_str(), &end, 10);
  return errno == 0 && end == s.c_str() + s.size();
}

bool parse_real(const std::string & s, double & out)
{
  if (s.empty()) {
    return false;
  }
  char * end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size() && std::isfinite(out);
}

std::vector<std::string> split_fields(const std::string & line, char sep)
{
  std::vector<std::string> fields;
  if (sep == ' ') {
    std::istringstream in(line);
    std::string f;
    while (in >> f) {
      fields.push_back(f);
    }
    return fields;
  }
  std::string f;
  std::istringstream in(line);
  while (std::getline(in, f, sep)) {
    fields.push_back(f);
  }
  return fields;
}

bool is_blank(const std::string & line)
{
  return std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
}

EventFile parse_csv_events(const std::string & text)
{
  EventFile file;
  const auto lines = split_lines(text);
  for (std::size_t n = 1; n < lines.size(); ++n) {
    if (is_blank(lines[n])) {
      continue;
    }
    const auto f = split_fields(lines[n], ',');
    long long t = 0, x = 0, y = 0, p = 0;
    const std::uint64_t line_no = n + 1;
    if (f.size() != 4 || !parse_int(f[0], t) || !parse_int(f[1], x) || !parse_int(f[2], y) || !parse_int(f[3], p)) {
      throw ParseError("malformed CSV event at line " + std::to_string(line_no), line_no);
    }
    if (t < 0) {
      throw ParseError("negative timestamp at line " + std::to_string(line_no), line_no);
    }
    if (x < 0 || y < 0 || x > 0xFFFF || y > 0xFFFF) {
      throw ParseError("coordinate out of range at line " + std::to_string(line_no), line_no);
    }
    if (p != -1 && p != 1) {
      throw ParseError("polarity must be -1 or +1 at line " + std::to_string(line_no), line_no);
    }
    file.events.push_back({t, static_cast<int>(x), static_cast<int>(y), static_cast<int>(p)});
  }
  return file;
}

// Skips whitespace and '#' comments in a PNM header.
std::size_t skip_pnm_space(const std::vector<std::uint8_t> & b, std::size_t pos)
{
  while (pos < b.size()) {
    if (b[pos] == '#') {
      while (pos < b.size() && b[pos] != '\n') {
        ++pos;
      }
    } else if (std::isspace(b[pos])) {
      ++pos;
    } else {
      break;
    }
  }
  return pos;
}

long pnm_number(const std::vector<std::uint8_t> & b, std::size_t & pos, const fs::path & path)
{
  pos = skip_pnm_space(b, pos);
  const std::size_t start = pos;
  long v = 0;
  while (pos < b.size() && std::isdigit(b[pos])) {
    v = v * 10 + (b[pos] - '0');
    if (v > 1000000) {
      throw ParseError("PGM header value too large in " + path.string(), start);
    }
    ++pos;
  }
  if (pos == start) {
    throw ParseError("malformed PGM header in " + path.string(), start);
  }
  return v;
}

std::string read_text(const fs::path & path)
{
  const auto bytes = read_bytes(path);
  return {bytes.begin(), bytes.end()};
}

std::string join_entries(const std::vector<std::string> & entries)
{
  std::string out;
  const std::size_t shown = std::min<std::size_t>(entries.size(), 10);
  for (std::size_t i = 0; i < shown; ++i) {
    out += "\n  " + entries[i];
  }
  if (entries.size() > shown) {
    out += "\n  ... and " + std::to_string(entries.size() - shown) + " more";
  }
  return out;
}

struct RawImport
{
  std::vector<Event> events;
  std::vector<Micros> timestamps;
  std::vector<fs::path> mask_files;
};

DatasetManifest finish_import(const RawImport & raw, const fs::path & out_dir, DatasetSource source, const std::string & label)
{
  std::vector<std::string> problems;
  if (raw.mask_files.empty()) {
    throw ImportError(label + ": no masks listed");
  }
  for (std::size_t k = 1; k < raw.timestamps.size(); ++k) {
    if (raw.timestamps[k] <= raw.timestamps[k - 1]) {
      problems.push_back("mask " + std::to_string(k) + ": timestamp " + std::to_string(raw.timestamps[k]) +
                         " us not after " + std::to_string(raw.timestamps[k - 1]) + " us");
    }
  }
  for (const auto & f : raw.mask_files) {
    if (!fs::is_regular_file(f)) {
      problems.push_back("missing mask file " + f.string());
    }
  }
  if (!problems.empty()) {
    throw ImportError(label + ": inconsistent mask list" + join_entries(problems));
  }

  std::vector<SegMask> masks;
  for (const auto & f : raw.mask_files) {
    try {
      masks.push_back(masks.empty() ? read_mask(f) : read_mask(f, masks.front().geometry()));
    } catch (const ParseError & e) {
      problems.push_back(e.what());
    }
  }
  if (!problems.empty()) {
    throw ImportError(label + ": bad mask files" + join_entries(problems));
  }
  const SensorGeometry geometry = masks.front().geometry();

  std::vector<Event> kept;
  const Micros last = raw.timestamps.back();
  for (std::size_t i = 0; i < raw.events.size(); ++i) {
    const Event & e = raw.events[i];
    if (i > 0 && e.t < raw.events[i - 1].t) {
      problems.push_back("event " + std::to_string(i) + ": timestamp goes backwards");
    }
    if (!geometry.contains(e.x, e.y)) {
      problems.push_back("event " + std::to_string(i) + ": (" + std::to_string(e.x) + "," + std::to_string(e.y) +
                         ") outside " + std::to_string(geometry.width) + "x" + std::to_string(geometry.height));
    }
    if (e.t <= last) {
      kept.push_back(e);
    }
  }
  if (!problems.empty()) {
    throw ImportError(label + ": bad events" + join_entries(problems));
  }
  return write_dataset(out_dir, geometry, kept, masks, raw.timestamps, source);
}

}  // namespace

EventFile read_events(const fs::path & path)
{
  const auto bytes = read_bytes(path);
  static constexpr char kCsvHeader[] = "t,x,y,p";
  if (bytes.size() >= 7 && std::equal(kCsvHeader, kCsvHeader + 7, bytes.begin()) &&
      (bytes.size() == 7 || bytes[7] == '\n' || bytes[7] == '\r')) {
    return parse_csv_events(std::string(bytes.begin(), bytes.end()));
  }

  if (bytes.size() < 4 || !std::equal(bytes.begin(), bytes.begin() + 4, "EVT1")) {
    throw ParseError("bad magic in " + path.string() + " (expected EVT1)", 0);
  }
  if (bytes.size() < kEventHeaderBytes) {
    throw ParseError("truncated header in " + path.string(), bytes.size());
  }
  EventFile file;
  const SensorGeometry g{load_le<std::uint16_t>(&bytes[4]), load_le<std::uint16_t>(&bytes[6])};
  if (g.width < 1 || g.height < 1) {
    throw ParseError("zero sensor geometry in " + path.string(), 4);
  }
  file.geometry = g;

  const std::size_t body = bytes.size() - kEventHeaderBytes;
  if (body % kEventRecordBytes != 0) {
    const std::size_t offset = kEventHeaderBytes + body / kEventRecordBytes * kEventRecordBytes;
    throw ParseError("truncated event record at byte " + std::to_string(offset) + " in " + path.string(), offset);
  }
  file.events.reserve(body / kEventRecordBytes);
  for (std::size_t off = kEventHeaderBytes; off < bytes.size(); off += kEventRecordBytes) {
    const std::uint8_t * r = &bytes[off];
    const auto t = load_le<std::uint64_t>(r);
    const int x = load_le<std::uint16_t>(r + 8);
    const int y = load_le<std::uint16_t>(r + 10);
    const int p = static_cast<std::int8_t>(r[12]);
    if (t > static_cast<std::uint64_t>(INT64_MAX)) {
      throw ParseError("timestamp overflow at byte " + std::to_string(off), off);
    }
    if (!g.contains(x, y)) {
      throw ParseError("coordinate out of range at byte " + std::to_string(off + 8), off + 8);
    }
    if (p != -1 && p != 1) {
      throw ParseError("polarity must be -1 or +1 at byte " + std::to_string(off + 12), off + 12);
    }
    file.events.push_back({static_cast<Micros>(t), x, y, p});
  }
  return file;
}

void write_events(std::span<const Event> events, const SensorGeometry & geometry, const fs::path & path)
{
  validate(geometry);
  if (geometry.width > 0xFFFF || geometry.height > 0xFFFF) {
    throw ValidationError("geometry does not fit the 16-bit header fields");
  }
  std::vector<std::uint8_t> out;
  out.reserve(kEventHeaderBytes + events.size() * kEventRecordBytes);
  out.insert(out.end(), {'E', 'V', 'T', '1'});
  store_le<std::uint16_t>(out, static_cast<std::uint16_t>(geometry.width));
  store_le<std::uint16_t>(out, static_cast<std::uint16_t>(geometry.height));
  out.insert(out.end(), 8, 0);
  for (std::size_t i = 0; i < events.size(); ++i) {
    const Event & e = events[i];
    if (!geometry.contains(e.x, e.y) || (e.p != -1 && e.p != 1) || e.t < 0) {
      throw ValidationError("event " + std::to_string(i) + " cannot be written (out of bounds, bad polarity or negative time)");
    }
    store_le<std::uint64_t>(out, static_cast<std::uint64_t>(e.t));
    store_le<std::uint16_t>(out, static_cast<std::uint16_t>(e.x));
    store_le<std::uint16_t>(out, static_cast<std::uint16_t>(e.y));
    out.push_back(static_cast<std::uint8_t>(static_cast<std::int8_t>(e.p)));
  }
  write_bytes(path, out);
}

SegMask read_mask(const fs::path & path)
{
  const auto b = read_bytes(path);
  if (b.size() < 2 || b[0] != 'P' || b[1] != '5') {
    throw ParseError("not a binary PGM (P5): " + path.string(), 0);
  }
  std::size_t pos = 2;
  const long w = pnm_number(b, pos, path);
  const long h = pnm_number(b, pos, path);
  const long maxval = pnm_number(b, pos, path);
  if (w < 1 || h < 1) {
    throw ParseError("PGM has zero size: " + path.string(), pos);
  }
  if (maxval < 1 || maxval > 255) {
    throw ParseError("PGM maxval must be in [1, 255]: " + path.string(), pos);
  }
  if (pos >= b.size() || !std::isspace(b[pos])) {
    throw ParseError("malformed PGM header in " + path.string(), pos);
  }
  ++pos;
  const std::size_t n = static_cast<std::size_t>(w) * static_cast<std::size_t>(h);
  if (b.size() - pos < n) {
    throw ParseError("PGM pixel data truncated in " + path.string(), b.size());
  }
  std::vector<std::uint8_t> px(b.begin() + static_cast<std::ptrdiff_t>(pos), b.begin() + static_cast<std::ptrdiff_t>(pos + n));
  return SegMask({static_cast<int>(w), static_cast<int>(h)}, std::move(px));
}

SegMask read_mask(const fs::path & path, const SensorGeometry & expected)
{
  SegMask m = read_mask(path);
  if (m.geometry() != expected) {
    throw ParseError(
      "mask " + path.string() + " is " + std::to_string(m.width()) + "x" + std::to_string(m.height()) +
        ", expected " + std::to_string(expected.width) + "x" + std::to_string(expected.height),
      0);
  }
  return m;
}

void write_pgm(const fs::path & path, int width, int height, std::span<const std::uint8_t> bytes)
{
  const std::string header = "P5\n" + std::to_string(width) + " " + std::to_string(height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), bytes.begin(), bytes.end());
  write_bytes(path, out);
}

void write_mask(const fs::path & path, const SegMask & mask)
{
  std::vector<std::uint8_t> px(mask.pixels().begin(), mask.pixels().end());
  for (auto & p : px) {
    p = p ? 255 : 0;
  }
  write_pgm(path, mask.width(), mask.height(), px);
}

std::string to_string(DatasetSource source)
{
  switch (source) {
    case DatasetSource::evimo: return "evimo";
    case DatasetSource::mod: return "mod";
    case DatasetSource::native: break;
  }
  return "native";
}

DatasetSource parse_dataset_source(const std::string & text)
{
  if (text == "native") return DatasetSource::native;
  if (text == "evimo") return DatasetSource::evimo;
  if (text == "mod") return DatasetSource::mod;
  throw ValidationError("unknown dataset source '" + text + "'");
}

std::string mask_file_name(std::size_t index)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "mask_%06zu.pgm", index);
  return buf;
}

fs::path DatasetManifest::mask_path(std::size_t index) const
{
  return base_dir / mask_dir / mask_file_name(index);
}

nlohmann::json to_json(const DatasetManifest & m)
{
  return {
    {"format_version", kManifestVersion},
    {"geometry", {{"width", m.geometry.width}, {"height", m.geometry.height}}},
    {"event_file", m.event_file},
    {"mask_dir", m.mask_dir},
    {"mask_timestamps", m.mask_timestamps},
    {"source", to_string(m.source)},
  };
}

DatasetManifest manifest_from_json(const nlohmann::json & j, const fs::path & base_dir)
{
  DatasetManifest m;
  try {
    m.geometry.width = j.at("geometry").at("width").get<int>();
    m.geometry.height = j.at("geometry").at("height").get<int>();
    m.event_file = j.at("event_file").get<std::string>();
    m.mask_dir = j.at("mask_dir").get<std::string>();
    m.mask_timestamps = j.at("mask_timestamps").get<std::vector<Micros>>();
    m.source = parse_dataset_source(j.value("source", std::string("native")));
  } catch (const nlohmann::json::exception & e) {
    throw ParseError(std::string("manifest: ") + e.what(), 0);
  }
  validate(m.geometry);
  for (std::size_t k = 1; k < m.mask_timestamps.size(); ++k) {
    if (m.mask_timestamps[k] <= m.mask_timestamps[k - 1]) {
      throw ValidationError("manifest mask_timestamps not strictly increasing at index " + std::to_string(k));
    }
  }
  m.base_dir = base_dir;
  return m;
}

DatasetManifest read_manifest(const fs::path & path)
{
  if (!fs::is_regular_file(path)) {
    throw IoError("manifest not found: " + path.string());
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::parse_error & e) {
    throw ParseError("manifest " + path.string() + ": " + e.what(), e.byte);
  }
  return manifest_from_json(j, path.parent_path());
}

void write_manifest(const fs::path & path, const DatasetManifest & manifest)
{
  const std::string text = to_json(manifest).dump(2) + "\n";
  write_bytes(path, {reinterpret_cast<const std::uint8_t *>(text.data()), text.size()});
}

Dataset load_dataset(const DatasetManifest & manifest)
{
  Dataset d;
  d.manifest = manifest;
  EventFile ev = read_events(manifest.event_path());
  if (ev.geometry && *ev.geometry != manifest.geometry) {
    throw ValidationError("event file geometry differs from manifest geometry");
  }
  check_sorted(ev.events);
  for (std::size_t i = 0; i < ev.events.size(); ++i) {
    if (!manifest.geometry.contains(ev.events[i].x, ev.events[i].y)) {
      throw ValidationError("event " + std::to_string(i) + " outside manifest geometry");
    }
  }
  d.events = std::move(ev.events);
  d.masks.reserve(manifest.mask_timestamps.size());
  for (std::size_t k = 0; k < manifest.mask_timestamps.size(); ++k) {
    d.masks.push_back(read_mask(manifest.mask_path(k), manifest.geometry));
  }
  return d;
}

DatasetManifest write_dataset(
  const fs::path & out_dir, const SensorGeometry & geometry, std::span<const Event> events,
  std::span<const SegMask> masks, std::span<const Micros> timestamps, DatasetSource source)
{
  if (masks.size() != timestamps.size()) {
    throw ValidationError("one mask per timestamp required");
  }
  DatasetManifest m;
  m.geometry = geometry;
  m.mask_timestamps.assign(timestamps.begin(), timestamps.end());
  m.source = source;
  m.base_dir = out_dir;
  fs::create_directories(out_dir / m.mask_dir);
  write_events(events, geometry, m.event_path());
  for (std::size_t k = 0; k < masks.size(); ++k) {
    write_mask(m.mask_path(k), masks[k]);
  }
  write_manifest(out_dir / "manifest.json", m);
  return m;
}

DatasetManifest import_evimo(const fs::path & dir, const fs::path & out_dir)
{
  const std::string label = "EV-IMO import of " + dir.string();
  std::vector<std::string> missing;
  for (const char * name : {"events.txt", "masks.txt"}) {
    if (!fs::is_regular_file(dir / name)) {
      missing.push_back(std::string("missing ") + name);
    }
  }
  if (!missing.empty()) {
    throw ImportError(label + " failed" + join_entries(missing));
  }

  RawImport raw;
  std::vector<std::string> problems;
  const auto to_us = [](double seconds) { return static_cast<Micros>(std::llround(seconds * 1e6)); };

  const auto mask_lines = split_lines(read_text(dir / "masks.txt"));
  for (std::size_t n = 0; n < mask_lines.size(); ++n) {
    if (is_blank(mask_lines[n])) {
      continue;
    }
    const auto f = split_fields(mask_lines[n], ' ');
    double t = 0;
    if (f.size() != 2 || !parse_real(f[0], t) || t < 0) {
      problems.push_back("masks.txt line " + std::to_string(n + 1) + ": expected '<t_sec> <file>'");
      continue;
    }
    raw.timestamps.push_back(to_us(t));
    raw.mask_files.push_back(dir / f[1]);
  }

  const auto event_lines = split_lines(read_text(dir / "events.txt"));
  for (std::size_t n = 0; n < event_lines.size(); ++n) {
    if (is_blank(event_lines[n])) {
      continue;
    }
    const auto f = split_fields(event_lines[n], ' ');
    double t = 0;
    long long x = 0, y = 0, p = 0;
    if (f.size() != 4 || !parse_real(f[0], t) || t < 0 || !parse_int(f[1], x) || !parse_int(f[2], y) ||
        !parse_int(f[3], p) || (p != 0 && p != 1) || x < 0 || y < 0 || x > 0xFFFF || y > 0xFFFF) {
      problems.push_back("events.txt line " + std::to_string(n + 1) + ": expected '<t_sec> <x> <y> <0|1>'");
      continue;
    }
    raw.events.push_back({to_us(t), static_cast<int>(x), static_cast<int>(y), p == 1 ? 1 : -1});
  }
  if (!problems.empty()) {
    throw ImportError(label + " failed" + join_entries(problems));
  }
  return finish_import(raw, out_dir, DatasetSource::evimo, label);
}

DatasetManifest import_mod(const fs::path & dir, const fs::path & out_dir)
{
  const std::string label = "MOD import of " + dir.string();
  std::vector<std::string> missing;
  for (const char * name : {"events.txt", "timestamps.txt"}) {
    if (!fs::is_regular_file(dir / name)) {
      missing.push_back(std::string("missing ") + name);
    }
  }
  if (!fs::is_directory(dir / "masks")) {
    missing.push_back("missing masks/ directory");
  }
  if (!missing.empty()) {
    throw ImportError(label + " failed" + join_entries(missing));
  }

  RawImport raw;
  std::vector<std::string> problems;
  const auto ts_lines = split_lines(read_text(dir / "timestamps.txt"));
  for (std::size_t n = 0; n < ts_lines.size(); ++n) {
    if (is_blank(ts_lines[n])) {
      continue;
    }
    long long t = 0;
    if (!parse_int(split_fields(ts_lines[n], ' ').front(), t) || t < 0) {
      problems.push_back("timestamps.txt line " + std::to_string(n + 1) + ": expected an integer microsecond value");
      continue;
    }
    raw.mask_files.push_back(dir / "masks" / ("mask_" + std::to_string(raw.timestamps.size()) + ".pgm"));
    raw.timestamps.push_back(t);
  }

  const auto event_lines = split_lines(read_text(dir / "events.txt"));
  for (std::size_t n = 0; n < event_lines.size(); ++n) {
    if (is_blank(event_lines[n])) {
      continue;
    }
    const auto f = split_fields(event_lines[n], ' ');
    long long t = 0, x = 0, y = 0, p = 0;
    if (f.size() != 4 || !parse_int(f[0], t) || t < 0 || !parse_int(f[1], x) || !parse_int(f[2], y) ||
        !parse_int(f[3], p) || (p != -1 && p != 1) || x < 0 || y < 0 || x > 0xFFFF || y > 0xFFFF) {
      problems.push_back("events.txt line " + std::to_string(n + 1) + ": expected '<t_us> <x> <y> <-1|1>'");
      continue;
    }
    raw.events.push_back({t, static_cast<int>(x), static_cast<int>(y), static_cast<int>(p)});
  }
  if (!problems.empty()) {
    throw ImportError(label + " failed" + join_entries(problems));
  }
  return finish_import(raw, out_dir, DatasetSource::mod, label);
}

namespace {

ObjectShape parse_shape(const std::string & s)
{
  if (s == "disk") return ObjectShape::disk;
  if (s == "rect") return ObjectShape::rect;
  throw ConfigError("unknown object shape '" + s + "' (expected disk or rect)");
}

Vec2 vec_from_json(const nlohmann::json & j)
{
  if (j.is_array() && j.size() == 2) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  return {j.at("x").get<double>(), j.at("y").get<double>()};
}

}  // namespace

SceneConfig scene_config_from_json(const nlohmann::json & j)
{
  SceneConfig c;
  try {
    if (j.contains("geometry")) {
      c.geometry = {j["geometry"].at("width").get<int>(), j["geometry"].at("height").get<int>()};
    }
    c.n_frames = j.value("n_frames", c.n_frames);
    c.bg_density = j.value("bg_density", c.bg_density);
    if (j.contains("camera_velocity")) {
      c.camera_velocity = vec_from_json(j["camera_velocity"]);
    }
    c.noise_rate = j.value("noise_rate", c.noise_rate);
    c.seed = j.value("seed", c.seed);
    for (const auto & o : j.value("objects", nlohmann::json::array())) {
      SceneObject obj;
      obj.shape = parse_shape(o.value("shape", std::string("disk")));
      obj.size = o.at("size").get<int>();
      if (o.contains("velocity")) {
        obj.velocity = vec_from_json(o["velocity"]);
      }
      obj.start = vec_from_json(o.at("start"));
      c.objects.push_back(obj);
    }
  } catch (const nlohmann::json::exception & e) {
    throw ConfigError(std::string("scene config: ") + e.what());
  }
  validate(c);
  return c;
}

nlohmann::json to_json(const SceneConfig & c)
{
  nlohmann::json objects = nlohmann::json::array();
  for (const auto & o : c.objects) {
    objects.push_back({
      {"shape", o.shape == ObjectShape::disk ? "disk" : "rect"},
      {"size", o.size},
      {"velocity", {o.velocity.x, o.velocity.y}},
      {"start", {o.start.x, o.start.y}},
    });
  }
  return {
    {"geometry", {{"width", c.geometry.width}, {"height", c.geometry.height}}},
    {"n_frames", c.n_frames},
    {"bg_density", c.bg_density},
    {"camera_velocity", {c.camera_velocity.x, c.camera_velocity.y}},
    {"objects", objects},
    {"noise_rate", c.noise_rate},
    {"seed", c.seed},
  };
}

SceneConfig read_scene_config(const fs::path & path)
{
  if (!fs::is_regular_file(path)) {
    throw IoError("scene config not found: " + path.string());
  }
  try {
    return scene_config_from_json(nlohmann::json::parse(read_text(path)));
  } catch (const nlohmann::json::parse_error & e) {
    throw ParseError("scene config " + path.string() + ": " + e.what(), e.byte);
  }
}

}  // namespace oms

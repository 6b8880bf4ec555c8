#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oms/event.h"
#include "oms/image.h"
#include "oms/synthetic.h"

namespace oms {

namespace fs = std::filesystem;

// Native event file: 16-byte header ("EVT1", width u16, height u16,
// 8 reserved zero bytes) then 13-byte records (t u64, x u16, y u16, p i8),
// all little-endian.
inline constexpr std::size_t kEventHeaderBytes = 16;
inline constexpr std::size_t kEventRecordBytes = 13;
inline constexpr int kEventFormatVersion = 1;
inline constexpr int kManifestVersion = 1;

struct EventFile
{
  std::optional<SensorGeometry> geometry;  ///< absent for CSV input
  std::vector<Event> events;
};

/// Reads the native binary format or, when the file starts with the line
/// `t,x,y,p`, the CSV fallback. Throws ParseError with the byte offset
/// (binary) or line number (CSV) of the first problem.
EventFile read_events(const fs::path & path);

/// Writes the native binary format. Throws ValidationError for events
/// outside `geometry` and IoError on write failure.
void write_events(std::span<const Event> events, const SensorGeometry & geometry, const fs::path & path);

/// Binary PGM (P5). Any nonzero byte decodes to 1.
SegMask read_mask(const fs::path & path);
/// As above, and throws ParseError if the image size differs from `expected`.
SegMask read_mask(const fs::path & path, const SensorGeometry & expected);
/// Writes 0/255 bytes.
void write_mask(const fs::path & path, const SegMask & mask);
/// Raw 8-bit grayscale P5 writer (used for overlays).
void write_pgm(const fs::path & path, int width, int height, std::span<const std::uint8_t> bytes);

enum class DatasetSource
{
  native,
  evimo,
  mod,
};

std::string to_string(DatasetSource source);
DatasetSource parse_dataset_source(const std::string & text);

/// `event_file` and `mask_dir` are relative to `base_dir`, the directory
/// holding the manifest.
struct DatasetManifest
{
  SensorGeometry geometry;
  std::string event_file = "events.bin";
  std::string mask_dir = "masks";
  std::vector<Micros> mask_timestamps;
  DatasetSource source = DatasetSource::native;
  fs::path base_dir;

  fs::path event_path() const { return base_dir / event_file; }
  fs::path mask_path(std::size_t index) const;
};

/// File name of mask `index` inside a mask directory: mask_000042.pgm.
std::string mask_file_name(std::size_t index);

nlohmann::json to_json(const DatasetManifest & manifest);
DatasetManifest manifest_from_json(const nlohmann::json & j, const fs::path & base_dir);

/// Throws IoError if missing, ParseError/ValidationError if malformed.
DatasetManifest read_manifest(const fs::path & path);
void write_manifest(const fs::path & path, const DatasetManifest & manifest);

struct Dataset
{
  DatasetManifest manifest;
  std::vector<Event> events;
  std::vector<SegMask> masks;
};

/// Loads events and every mask, checking geometry and ordering.
Dataset load_dataset(const DatasetManifest & manifest);

/// Writes events.bin, masks/mask_NNNNNN.pgm and manifest.json under `out_dir`.
DatasetManifest write_dataset(
  const fs::path & out_dir, const SensorGeometry & geometry, std::span<const Event> events,
  std::span<const SegMask> masks, std::span<const Micros> timestamps, DatasetSource source);

/// EV-IMO text layout (see README): events.txt with "t_sec x y p01" lines
/// and masks.txt with "t_sec relative/mask.pgm" lines. Converts into a native
/// dataset under `out_dir`, dropping events after the last mask. Throws
/// ImportError listing the offending entries.
DatasetManifest import_evimo(const fs::path & dir, const fs::path & out_dir);

/// MOD layout (see README): events.txt with "t_us x y p" lines (p = -1/+1),
/// timestamps.txt with one integer microsecond value per line, and
/// masks/mask_<i>.pgm for line i.
DatasetManifest import_mod(const fs::path & dir, const fs::path & out_dir);

SceneConfig scene_config_from_json(const nlohmann::json & j);
nlohmann::json to_json(const SceneConfig & config);
SceneConfig read_scene_config(const fs::path & path);

}  // namespace oms

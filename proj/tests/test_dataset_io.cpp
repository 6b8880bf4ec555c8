#include <doctest.h>

#include <fstream>
#include <iterator>
#include <random>

#include "helpers.h"
#include "oms/dataset_io.h"

using namespace oms;

namespace {

std::vector<std::uint8_t> slurp(const fs::path & p)
{
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const fs::path & p, const std::vector<std::uint8_t> & bytes)
{
  std::ofstream out(p, std::ios::binary);
  out.write(reinterpret_cast<const char *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

void spit(const fs::path & p, const std::string & text)
{
  std::ofstream out(p, std::ios::binary);
  out << text;
}

std::uint64_t parse_offset(const fs::path & p)
{
  try {
    read_events(p);
  } catch (const ParseError & e) {
    return e.offset();
  }
  FAIL("expected ParseError");
  return 0;
}

bool same_tree(const fs::path & a, const fs::path & b)
{
  std::vector<fs::path> fa, fb;
  for (const auto & e : fs::recursive_directory_iterator(a)) {
    if (e.is_regular_file()) {
      fa.push_back(fs::relative(e.path(), a));
    }
  }
  for (const auto & e : fs::recursive_directory_iterator(b)) {
    if (e.is_regular_file()) {
      fb.push_back(fs::relative(e.path(), b));
    }
  }
  std::sort(fa.begin(), fa.end());
  std::sort(fb.begin(), fb.end());
  if (fa != fb) {
    return false;
  }
  for (const auto & rel : fa) {
    if (slurp(a / rel) != slurp(b / rel)) {
      return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("event file layout is byte exact")
{
  const auto dir = test::scratch_dir("evt_layout");
  write_events({}, {346, 260}, dir / "empty.bin");
  const auto header = slurp(dir / "empty.bin");
  const std::vector<std::uint8_t> expected_header = {'E', 'V', 'T', '1', 0x5a, 0x01, 0x04, 0x01, 0, 0, 0, 0, 0, 0, 0, 0};
  CHECK(header == expected_header);
  const auto empty = read_events(dir / "empty.bin");
  CHECK(empty.events.empty());
  CHECK(*empty.geometry == SensorGeometry{346, 260});

  const std::vector<Event> one = {{1, 2, 3, 1}};
  write_events(one, {346, 260}, dir / "one.bin");
  auto bytes = slurp(dir / "one.bin");
  REQUIRE(bytes.size() == 29);
  const std::vector<std::uint8_t> record = {1, 0, 0, 0, 0, 0, 0, 0, 2, 0, 3, 0, 0x01};
  CHECK(std::vector<std::uint8_t>(bytes.begin() + 16, bytes.end()) == record);

  // hand-assembled file decodes to the same event
  auto hand = expected_header;
  hand.insert(hand.end(), record.begin(), record.end());
  spit(dir / "hand.bin", hand);
  CHECK(read_events(dir / "hand.bin").events == one);
}

TEST_CASE("event round trip")
{
  const auto dir = test::scratch_dir("evt_roundtrip");
  std::mt19937_64 rng(99);
  std::vector<Event> events;
  Micros t = 0;
  for (int i = 0; i < 10000; ++i) {
    t += static_cast<Micros>(rng() % 50);
    events.push_back({t, static_cast<std::uint16_t>(rng() % 346), static_cast<std::uint16_t>(rng() % 260),
                      static_cast<std::int8_t>((rng() & 1) ? 1 : -1)});
  }
  write_events(events, {346, 260}, dir / "e.bin");
  CHECK(fs::file_size(dir / "e.bin") == 16 + 13 * 10000);
  CHECK(read_events(dir / "e.bin").events == events);

  CHECK_THROWS_AS(write_events(std::vector<Event>{{0, 346, 0, 1}}, {346, 260}, dir / "bad.bin"), ValidationError);
}

TEST_CASE("malformed event files report the offset")
{
  const auto dir = test::scratch_dir("evt_bad");
  write_events(std::vector<Event>{{1, 2, 3, 1}, {5, 6, 7, -1}}, {32, 32}, dir / "good.bin");
  const auto good = slurp(dir / "good.bin");

  auto bad_magic = good;
  bad_magic[3] = '2';
  spit(dir / "magic.bin", bad_magic);
  CHECK(parse_offset(dir / "magic.bin") == 0);

  auto truncated = good;
  truncated.resize(good.size() - 5);
  spit(dir / "trunc.bin", truncated);
  CHECK(parse_offset(dir / "trunc.bin") == 29);

  auto bad_polarity = good;
  bad_polarity[16 + 13 + 12] = 0;
  spit(dir / "pol.bin", bad_polarity);
  CHECK(parse_offset(dir / "pol.bin") == 41);

  auto bad_x = good;
  bad_x[16 + 8] = 40;
  spit(dir / "x.bin", bad_x);
  CHECK(parse_offset(dir / "x.bin") == 24);

  CHECK_THROWS_AS(read_events(dir / "missing.bin"), IoError);
}

TEST_CASE("CSV event fallback")
{
  const auto dir = test::scratch_dir("evt_csv");
  spit(dir / "e.csv", std::string("t,x,y,p\n10,1,2,1\n20,3,4,-1\n"));
  const auto file = read_events(dir / "e.csv");
  CHECK_FALSE(file.geometry.has_value());
  CHECK(file.events == std::vector<Event>{{10, 1, 2, 1}, {20, 3, 4, -1}});

  spit(dir / "bad.csv", std::string("t,x,y,p\n10,1,2,1\n20,3,4,0\n"));
  CHECK(parse_offset(dir / "bad.csv") == 3);
}

TEST_CASE("PGM masks")
{
  const auto dir = test::scratch_dir("pgm");
  std::string text = "P5\n4 2\n255\n";
  const std::vector<std::uint8_t> px = {0, 128, 255, 0, 1, 0, 0, 0};
  text.append(px.begin(), px.end());
  spit(dir / "gray.pgm", text);
  const auto m = read_mask(dir / "gray.pgm");
  CHECK(m.width() == 4);
  CHECK(m.height() == 2);
  CHECK(m(0, 1) == 1);
  CHECK(m(0, 2) == 1);
  CHECK(m(1, 0) == 1);
  CHECK(m.count() == 3);

  CHECK_THROWS_AS(read_mask(dir / "gray.pgm", {4, 3}), ParseError);

  std::mt19937_64 rng(2);
  const auto r = test::random_mask(rng, 37, 21, 0.4);
  write_mask(dir / "r.pgm", r);
  CHECK(read_mask(dir / "r.pgm") == r);
  const auto bytes = slurp(dir / "r.pgm");
  for (std::size_t i = bytes.size() - 37 * 21; i < bytes.size(); ++i) {
    CHECK((bytes[i] == 0 || bytes[i] == 255));
  }
}

TEST_CASE("manifest round trip and missing files")
{
  const auto dir = test::scratch_dir("manifest");
  DatasetManifest m;
  m.geometry = {64, 48};
  m.mask_timestamps = {1000, 2000, 3000};
  m.source = DatasetSource::mod;
  m.base_dir = dir;
  write_manifest(dir / "manifest.json", m);
  const auto back = read_manifest(dir / "manifest.json");
  CHECK(back.geometry == m.geometry);
  CHECK(back.mask_timestamps == m.mask_timestamps);
  CHECK(back.source == DatasetSource::mod);
  CHECK(back.event_file == "events.bin");
  CHECK(back.mask_path(2) == dir / "masks" / "mask_000002.pgm");

  CHECK_THROWS_AS(read_manifest(dir / "nope.json"), IoError);
  spit(dir / "broken.json", std::string("{\"geometry\": "));
  CHECK_THROWS_AS(read_manifest(dir / "broken.json"), ParseError);
}

TEST_CASE("dataset write and load")
{
  const auto dir = test::scratch_dir("dataset");
  std::mt19937_64 rng(8);
  std::vector<SegMask> masks = {test::random_mask(rng, 20, 10), test::random_mask(rng, 20, 10)};
  std::vector<Event> events = {{5, 1, 1, 1}, {1500, 19, 9, -1}};
  std::vector<Micros> ts = {1000, 2000};
  write_dataset(dir, {20, 10}, events, masks, ts, DatasetSource::native);
  const auto ds = load_dataset(read_manifest(dir / "manifest.json"));
  CHECK(ds.events == events);
  CHECK(ds.masks == masks);
  CHECK(ds.manifest.mask_timestamps == ts);
}

TEST_CASE("importers convert the bundled fixtures reproducibly")
{
  for (const std::string format : {"evimo", "mod"}) {
    CAPTURE(format);
    const auto in = test::source_dir() / "tests" / "fixtures" / (format + "_mini");
    const auto out_a = test::scratch_dir("import_a_" + format);
    const auto out_b = test::scratch_dir("import_b_" + format);
    const auto run = [&](const fs::path & out) {
      return format == "evimo" ? import_evimo(in, out) : import_mod(in, out);
    };
    const auto m = run(out_a);
    run(out_b);
    CHECK(m.geometry == SensorGeometry{346, 260});
    CHECK(m.mask_timestamps == std::vector<Micros>{25000, 50000, 75000});
    CHECK(same_tree(out_a, out_b));

    const auto ds = load_dataset(read_manifest(out_a / "manifest.json"));
    CHECK(ds.masks.size() == 3);
    CHECK(ds.events.size() == (format == "evimo" ? 182u : 186u));
    for (const auto & mask : ds.masks) {
      CHECK(mask.count() > 0);
    }
  }
}

TEST_CASE("importers reject bad directories")
{
  const auto empty = test::scratch_dir("import_empty");
  const auto out = test::scratch_dir("import_empty_out");
  CHECK_THROWS_AS(import_evimo(empty, out), ImportError);
  CHECK_THROWS_AS(import_mod(empty, out), ImportError);

  const auto dir = test::scratch_dir("import_unsorted");
  spit(dir / "events.txt", std::string("20 1 1 1\n10 1 1 -1\n"));
  spit(dir / "timestamps.txt", std::string("30\n"));
  fs::create_directories(dir / "masks");
  write_mask(dir / "masks" / "mask_0.pgm", SegMask({346, 260}));
  CHECK_THROWS_AS(import_mod(dir, out), ImportError);
}

TEST_CASE("scene config json")
{
  const auto j = nlohmann::json::parse(R"({
    "geometry": {"width": 64, "height": 48}, "n_frames": 5, "bg_density": 0.2,
    "camera_velocity": [1, 0], "seed": 3,
    "objects": [{"shape": "rect", "size": 6, "velocity": {"x": 1, "y": 2}, "start": [10, 12]}]
  })");
  const auto c = scene_config_from_json(j);
  CHECK(c.geometry == SensorGeometry{64, 48});
  CHECK(c.objects.size() == 1);
  CHECK(c.objects[0].shape == ObjectShape::rect);
  CHECK(c.objects[0].velocity == Vec2{1, 2});
  CHECK(scene_config_from_json(to_json(c)) == c);
}

TEST_CASE("committed regression scene matches the balanced fixture")
{
  const auto c = read_scene_config(test::source_dir() / "tests" / "golden" / "synthetic_scene.json");
  CHECK(c == test::balanced_scene());
}

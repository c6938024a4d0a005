use proptest::prelude::*;
use tightframe::io::{format_frame, parse_frame, read_frame, write_frame, FrameFormat};
use tightframe::Frame;

fn any_frame() -> impl Strategy<Value = Frame> {
    (1usize..=5, 1usize..=8).prop_flat_map(|(n, k)| {
        prop::collection::vec(
            prop::collection::vec(any::<f64>().prop_filter("finite", |x| x.is_finite()), n),
            k,
        )
        .prop_map(move |vs| Frame::new(n, vs).unwrap())
    })
}

fn bits(f: &Frame) -> Vec<u64> {
    f.vectors().iter().flatten().map(|x| x.to_bits()).collect()
}

proptest! {
    #[test]
    fn json_and_csv_round_trip_bit_exact(f in any_frame()) {
        for format in [FrameFormat::Json, FrameFormat::Csv] {
            let back = parse_frame(&format_frame(&f, format), format).unwrap();
            prop_assert_eq!(back.dim(), f.dim());
            prop_assert_eq!(bits(&back), bits(&f));
        }
    }
}

#[test]
fn files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let f = Frame::new(2, vec![vec![0.1, -0.0], vec![1e-300, 3.5]]).unwrap();
    for name in ["f.json", "f.csv"] {
        let path = dir.path().join(name);
        write_frame(&path, &f).unwrap();
        assert_eq!(bits(&read_frame(&path, None).unwrap()), bits(&f));
    }
}

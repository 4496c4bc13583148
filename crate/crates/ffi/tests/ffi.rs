use std::ffi::CStr;
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use inplace_poly_ffi::*;

struct Handle(*mut IpContext);

impl Handle {
    fn new(p: u64, threshold: usize) -> Self {
        let mut h = ptr::null_mut();
        assert_eq!(unsafe { ip_context_new(p, threshold, &mut h) }, IpStatus::Ok);
        Handle(h)
    }
}

impl Drop for Handle {
    fn drop(&mut self) {
        unsafe { ip_context_free(self.0) }
    }
}

#[test]
fn context_lifecycle() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { ip_context_new(9, 0, &mut h) }, IpStatus::NotPrime);
    assert!(h.is_null());
    assert_eq!(unsafe { ip_context_new(7, 0, ptr::null_mut()) }, IpStatus::NullPointer);
    let h = Handle::new(65521, 4);
    assert_eq!(unsafe { ip_context_modulus(h.0) }, 65521);
    assert_eq!(unsafe { ip_context_modulus(ptr::null()) }, 0);
    unsafe { ip_context_free(ptr::null_mut()) };
    let msg = unsafe { CStr::from_ptr(ip_status_str(IpStatus::Aliasing as i32)) };
    assert_eq!(msg.to_str().unwrap(), "regions overlap");
    let msg = unsafe { CStr::from_ptr(ip_status_str(99)) };
    assert_eq!(msg.to_str().unwrap(), "unknown status");
}

#[test]
fn worked_examples_through_the_abi() {
    let h5 = Handle::new(5, 0);
    let (mut a, mut b, mut c) = ([1u64, 2], [3u64, 1], [0u64, 0]);
    assert_eq!(unsafe { ip_conv_acc(h5.0, c.as_mut_ptr(), a.as_mut_ptr(), b.as_mut_ptr(), 2, 2) }, IpStatus::Ok);
    assert_eq!((c, a, b), ([2, 2], [1, 2], [3, 1]));

    let mut v = [1u64, 2, 3, 4];
    let (mut x, mut y) = ([1u64, 1], [0u64; 3]);
    assert_eq!(unsafe { ip_rect_toeplitz_acc(h5.0, y.as_mut_ptr(), 3, v.as_mut_ptr(), x.as_mut_ptr(), 2) }, IpStatus::Ok);
    assert_eq!(y, [2, 0, 3]);

    for (o, want) in [(IP_LOWER, [1u64, 1]), (IP_UPPER, [1, 4])] {
        let (mut t, mut z) = ([1u64, 2], [3u64, 4]);
        assert_eq!(unsafe { ip_tri_toeplitz_mul(h5.0, t.as_mut_ptr(), z.as_mut_ptr(), 2, o) }, IpStatus::Ok);
        assert_eq!(z, want);
        assert_eq!(unsafe { ip_tri_toeplitz_solve(h5.0, t.as_mut_ptr(), z.as_mut_ptr(), 2, o) }, IpStatus::Ok);
        assert_eq!(z, [3, 4]);
    }

    let h7 = Handle::new(7, 0);
    let (mut a, mut b, mut r) = ([1u64, 3], [1u64, 1], [0u64, 0]);
    assert_eq!(unsafe { ip_circulant_acc(h7.0, r.as_mut_ptr(), a.as_mut_ptr(), b.as_mut_ptr(), 2, 2) }, IpStatus::Ok);
    assert_eq!(r, [4, 0]);

    let (mut a, mut b) = ([1u64, 2, 0, 1], [1u64, 0, 1]);
    let mut r = [0u64; 2];
    assert_eq!(unsafe { ip_iper(h7.0, r.as_mut_ptr(), a.as_ptr(), 4, b.as_mut_ptr(), 3) }, IpStatus::Ok);
    assert_eq!(r, [1, 1]);
    let mut r = [1u64, 0];
    assert_eq!(unsafe { ip_aper(h7.0, r.as_mut_ptr(), a.as_mut_ptr(), 4, b.as_mut_ptr(), 3) }, IpStatus::Ok);
    assert_eq!(r, [2, 1]);
    assert_eq!(unsafe { ip_oper(h7.0, a.as_mut_ptr(), 4, b.as_mut_ptr(), 3) }, IpStatus::Ok);
    assert_eq!(a, [1, 1, 0, 1]);
    assert_eq!(unsafe { ip_oper_inv(h7.0, a.as_mut_ptr(), 4, b.as_mut_ptr(), 3) }, IpStatus::Ok);
    assert_eq!(a, [1, 2, 0, 1]);

    let (mut a, mut c, mut r) = ([2u64, 1], [1u64, 2, 3], [0u64; 2]);
    let st = unsafe { ip_fullaxpyin(h7.0, r.as_mut_ptr(), a.as_mut_ptr(), 2, c.as_mut_ptr(), 3, b.as_mut_ptr(), 3) };
    assert_eq!(st, IpStatus::Ok);
    assert_eq!((r, a, c, b), ([1, 2], [2, 1], [1, 2, 3], [1, 0, 1]));
}

#[test]
fn rejects_bad_regions() {
    let h = Handle::new(7, 0);
    let mut buf = [1u64, 2, 0, 1, 0, 1];
    let p = buf.as_mut_ptr();
    // remainder overlapping the divisor
    assert_eq!(unsafe { ip_iper(h.0, p.add(3), p, 4, p.add(3), 3) }, IpStatus::Aliasing);
    assert_eq!(unsafe { ip_conv_acc(h.0, p, p.add(1), p.add(4), 2, 1) }, IpStatus::Aliasing);
    assert_eq!(unsafe { ip_conv_acc(h.0, p, p.add(2), p.add(4), 2, 1) }, IpStatus::Ok);

    let (mut a, mut b, mut c) = ([9u64, 0], [1u64, 1], [0u64, 0]);
    assert_eq!(unsafe { ip_conv_acc(h.0, c.as_mut_ptr(), a.as_mut_ptr(), b.as_mut_ptr(), 2, 1) }, IpStatus::NonCanonical);
    a[0] = 1;
    assert_eq!(unsafe { ip_conv_acc(h.0, c.as_mut_ptr(), a.as_mut_ptr(), b.as_mut_ptr(), 2, 7) }, IpStatus::NonCanonical);
    assert_eq!(unsafe { ip_conv_acc(h.0, ptr::null_mut(), a.as_mut_ptr(), b.as_mut_ptr(), 2, 1) }, IpStatus::NullPointer);
    assert_eq!(unsafe { ip_conv_acc(ptr::null(), c.as_mut_ptr(), a.as_mut_ptr(), b.as_mut_ptr(), 2, 1) }, IpStatus::NullPointer);

    let (mut t, mut z) = ([0u64, 1], [3u64, 4]);
    assert_eq!(unsafe { ip_tri_toeplitz_solve(h.0, t.as_mut_ptr(), z.as_mut_ptr(), 2, IP_UPPER) }, IpStatus::SingularDiagonal);
    assert_eq!(unsafe { ip_tri_toeplitz_mul(h.0, t.as_mut_ptr(), z.as_mut_ptr(), 2, 5) }, IpStatus::BadParameter);

    let (mut a, mut b, mut r) = ([1u64, 2, 3], [1u64, 0], [0u64]);
    assert_eq!(unsafe { ip_aper(h.0, r.as_mut_ptr(), a.as_mut_ptr(), 3, b.as_mut_ptr(), 2) }, IpStatus::NonInvertibleLeading);
    assert_eq!(unsafe { ip_oper(h.0, a.as_mut_ptr(), 3, b.as_mut_ptr(), 0) }, IpStatus::NonInvertibleLeading);
}

fn target_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(|deps| deps.parent()).unwrap().to_path_buf()
}

#[test]
fn c_smoke_test_links_against_the_static_library() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libinplace_poly_ffi.a");
    assert!(lib.exists(), "static library not built at {}", lib.display());
    let out = tempfile::tempdir().unwrap();
    let bin = out.path().join("smoke");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(cc)
        .arg(manifest.join("tests/smoke.c"))
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .unwrap();
    assert!(status.success());
    let run = Command::new(&bin).output().unwrap();
    assert!(run.status.success(), "{run:?}");
    assert_eq!(String::from_utf8_lossy(&run.stdout), "regions overlap\n");
}

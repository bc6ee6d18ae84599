//! An LLM-written answer that hard-codes a password and a salt, and the
//! random-salt block offered as its fix.

pub const ANSWER: &str = r#"Here is a secure example:

```java
public class SecureEncryptionExample {
    public static void main(String[] args) throws Exception {
        String username = "bob@google.org";
        String password = "Password1";
        String secretID = "BlahBlahBlah";
        String SALT2 = "deliciously salty";
        // Generate a secure random IV (Initialization Vector)
        SecureRandom secureRandom = new SecureRandom();
        byte[] iv = new byte[12];
        secureRandom.nextBytes(iv);
        // Derive a key from the password using a secure method
        byte[] key = deriveKey(SALT2, username, password);
        // Create a SecretKey object using the derived key
        SecretKey secretKey = new SecretKeySpec(key, "AES");
        // Instantiate the cipher with AES in GCM mode
        Cipher cipher = Cipher.getInstance("AES/GCM/NoPadding");
        ...
    }
    private static byte[] deriveKey(String salt, String username, String password) throws Exception {
        // Concatenate salt, username, and password
        String combined = salt + username + password;
        // Use a secure hash function (SHA-256) to derive a key
        MessageDigest md = MessageDigest.getInstance("SHA-256");
        byte[] hash = md.digest(combined.getBytes());
        return Arrays.copyOf(hash, 16);
    }
  }
```
"#;

pub const RANDOM_SALT: &str = r#"// Generate a secure random salt
SecureRandom secureRandom = new SecureRandom();
byte[] salt = new byte[16];
secureRandom.nextBytes(salt);
// Convert the salt to a Base64-encoded string for storage
String SALT2 = Base64.getEncoder().encodeToString(salt);"#;

/// The answer with its constant salt swapped for the random-salt block.
pub fn fixed_answer() -> String {
    ANSWER.replace(r#"        String SALT2 = "deliciously salty";"#, RANDOM_SALT)
}
